"""Gateway exceptions."""


class GatewayError(RuntimeError):
    """Base class for every failure to obtain a completion."""


class RetryExhaustedError(GatewayError):
    """Transient failures persisted through every allowed attempt."""


class RemoteRequestError(GatewayError):
    """The remote service rejected the request (non-retryable status)."""


class MalformedReplyError(GatewayError):
    """The remote reply does not have the chat completion shape."""


class ScriptUnderrunError(GatewayError):
    """The cassette has no response left for the requesting role."""


class CassetteMismatchError(GatewayError):
    """A replayed request differs from the one recorded."""


class CassetteWriteError(GatewayError):
    """A recorded exchange could not be persisted."""
