from .data import Example, load_dataset, training_pairs
from .errors import BadDataset, DatasetTooSmall, FinetuneError, UnknownEncoder
from .model import HashedBiEncoder, build_encoder, load_model, save_model
from .serve import create_app, serve
from .train import TrainConfig, contrastive_loss, load_loss_curve, train

__all__ = [
    "BadDataset",
    "DatasetTooSmall",
    "Example",
    "FinetuneError",
    "HashedBiEncoder",
    "TrainConfig",
    "UnknownEncoder",
    "build_encoder",
    "contrastive_loss",
    "create_app",
    "load_dataset",
    "load_loss_curve",
    "load_model",
    "save_model",
    "serve",
    "train",
    "training_pairs",
]
