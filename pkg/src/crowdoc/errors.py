"""Exception types shared across the crowdoc package."""


class CrowdocError(Exception):
    """Base class for all operational errors raised by crowdoc."""


class MalformedXml(CrowdocError):
    def __init__(self, position, detail=""):
        self.position = position
        super().__init__(f"malformed XML near {position}: {detail}")


class NotFound(CrowdocError):
    def __init__(self, post_id):
        self.post_id = post_id
        super().__init__(f"post {post_id} not found in store")


class EmptyQuery(CrowdocError):
    pass


class EmbeddingServiceUnavailable(CrowdocError):
    pass


class DimensionMismatch(CrowdocError):
    def __init__(self, expected, got):
        self.expected = expected
        self.got = got
        super().__init__(f"embedding dimension mismatch: expected {expected}, got {got}")


class MissingLabel(CrowdocError):
    def __init__(self, api, ktype, post_id):
        self.api = api
        self.ktype = ktype
        self.post_id = post_id
        super().__init__(f"no relevance label for ({api}, {ktype}, post {post_id})")


class EmptyField(CrowdocError):
    def __init__(self, field):
        self.field = field
        super().__init__(f"prompt field {field!r} must not be empty")


class NothingToSummarize(CrowdocError):
    pass


class RateLimited(CrowdocError):
    pass


class ProviderError(CrowdocError):
    def __init__(self, status, body=""):
        self.status = status
        self.body = body
        super().__init__(f"provider returned status {status}: {body[:200]}")


class CassetteMiss(CrowdocError):
    def __init__(self, request_hash):
        self.request_hash = request_hash
        super().__init__(f"no recorded response for request hash {request_hash}")


class UnparseableResponse(CrowdocError):
    pass


class NoPostsRetrieved(CrowdocError):
    pass


class UnlabeledEntry(CrowdocError):
    def __init__(self, entry_id):
        self.entry_id = entry_id
        super().__init__(f"entry {entry_id} has no label")


class NoReports(CrowdocError):
    pass


class ConfigError(CrowdocError):
    pass
