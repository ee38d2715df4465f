from .knowledge import (
    ApiProfile,
    DEFAULT_QUERY_TEMPLATES,
    KNOWLEDGE_TYPE_DESCRIPTIONS,
    KNOWLEDGE_TYPE_EXAMPLES,
    KnowledgeType,
    RetrievalQuery,
    build_query,
)
from .tokenizer import tokenize, TOKENIZER_VERSION
from .index import InvertedIndex, ScoredPost, bm25_search, build_index
from .dense import EmbeddingClient, dense_search, embed_corpus
from .finetune_export import export_finetune_dataset, finetune_examples
from .evaluate import RelevanceLabel, RetrievalAccuracy, evaluate_retrieval, render_retrieval_table

__all__ = [
    "ApiProfile",
    "DEFAULT_QUERY_TEMPLATES",
    "KNOWLEDGE_TYPE_DESCRIPTIONS",
    "KNOWLEDGE_TYPE_EXAMPLES",
    "KnowledgeType",
    "RetrievalQuery",
    "build_query",
    "tokenize",
    "TOKENIZER_VERSION",
    "InvertedIndex",
    "ScoredPost",
    "bm25_search",
    "build_index",
    "EmbeddingClient",
    "dense_search",
    "embed_corpus",
    "export_finetune_dataset",
    "finetune_examples",
    "RelevanceLabel",
    "RetrievalAccuracy",
    "evaluate_retrieval",
    "render_retrieval_table",
]
