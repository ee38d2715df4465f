class FinetuneError(Exception):
    """Base class for all finetune errors."""


class DatasetTooSmall(FinetuneError):
    """The dataset (or batch configuration) cannot support in-batch negatives."""


class BadDataset(FinetuneError):
    """A dataset line does not match the {query, positives} record format."""


class UnknownEncoder(FinetuneError):
    """The base encoder identifier is not recognized."""
