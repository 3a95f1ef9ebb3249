"""Uniform chat completion interface over the remote and scripted backends."""

import logging
from typing import Protocol

import httpx

from src.llm_gateway.cassette import CassetteRecord, CassetteRecorder, ScriptedBackend
from src.llm_gateway.errors import CassetteWriteError
from src.llm_gateway.models import BackendConfig, BackendKind, ChatRequest, ChatResponse, Usage
from src.llm_gateway.rate_limit import TokenBucket
from src.llm_gateway.remote import RemoteBackend

logger = logging.getLogger(__name__)


class Backend(Protocol):
    async def complete(self, request: ChatRequest) -> ChatResponse: ...

    async def aclose(self) -> None: ...


class LLMGateway:
    """Backend plus optional shared rate limiter and cassette recorder.

    Safe to share between concurrent runs; each run issues its calls
    sequentially. Content is passed through untouched.
    """

    def __init__(
        self,
        backend: Backend,
        rate_limiter: TokenBucket | None = None,
        recorder: CassetteRecorder | None = None,
    ) -> None:
        self.backend = backend
        self.rate_limiter = rate_limiter
        self.recorder = recorder
        self.calls = 0
        self.usage = Usage()

    async def complete(self, request: ChatRequest) -> ChatResponse:
        if self.rate_limiter is not None:
            await self.rate_limiter.acquire()
        response = await self.backend.complete(request)
        self.calls += 1
        self.usage = self.usage + response.usage
        if self.recorder is not None:
            self.recorder.append(request, response)
        return response

    async def aclose(self) -> None:
        await self.backend.aclose()


def create_gateway(
    config: BackendConfig,
    transport: httpx.AsyncBaseTransport | None = None,
    rate_limiter: TokenBucket | None = None,
) -> LLMGateway:
    """Build a gateway for a backend configuration.

    Args:
        config: Backend selection and settings
        transport: Custom HTTP transport for the remote backend (tests use a stub)
        rate_limiter: Shared limiter; only applied to the remote backend

    Returns:
        Ready-to-use LLMGateway
    """
    recorder = CassetteRecorder(config.record_path) if config.record_path else None
    if config.kind is BackendKind.SCRIPTED:
        assert config.script_path is not None
        return LLMGateway(ScriptedBackend.from_path(config.script_path), recorder=recorder)

    logger.info(
        f"Using remote backend {config.endpoint} with model {config.model_id}",
        extra={"endpoint": config.endpoint, "model_id": config.model_id},
    )
    return LLMGateway(
        RemoteBackend(config, transport=transport),
        rate_limiter=rate_limiter,
        recorder=recorder,
    )


async def complete(
    config: BackendConfig,
    request: ChatRequest,
    transport: httpx.AsyncBaseTransport | None = None,
) -> ChatResponse:
    """One-shot completion through a freshly built gateway."""
    gateway = create_gateway(config, transport=transport)
    try:
        return await gateway.complete(request)
    finally:
        await gateway.aclose()


def record_replay(
    config: BackendConfig, request: ChatRequest, response: ChatResponse
) -> CassetteRecord:
    """Append one exchange to the configured cassette.

    Raises:
        CassetteWriteError: If recording is not enabled or the write fails
    """
    if config.record_path is None:
        raise CassetteWriteError("recording is not enabled (no record path configured)")
    return CassetteRecorder(config.record_path).append(request, response)
