from .prompts import (
    CONTEXT,
    ChatMessage,
    SRC_MARKER,
    render_extraction_prompt,
    render_summarization_prompt,
    render_validation_prompt,
)
from .cassette import Cassette, request_hash
from .client import (
    API_KEY_ENV,
    CassetteProvider,
    LiveProvider,
    LlmClient,
    LlmRequest,
    LlmResponse,
    RecordingProvider,
    RetryPolicy,
    TokenBucket,
    TransientProviderError,
)

__all__ = [
    "CONTEXT",
    "ChatMessage",
    "SRC_MARKER",
    "render_extraction_prompt",
    "render_summarization_prompt",
    "render_validation_prompt",
    "Cassette",
    "request_hash",
    "API_KEY_ENV",
    "CassetteProvider",
    "LiveProvider",
    "LlmClient",
    "LlmRequest",
    "LlmResponse",
    "RecordingProvider",
    "RetryPolicy",
    "TokenBucket",
    "TransientProviderError",
]
