"""Remote chat completion backend over HTTP."""

import logging
import os
from typing import Any

import httpx
from tenacity import (
    AsyncRetrying,
    RetryError,
    retry_if_exception_type,
    stop_after_attempt,
    wait_exponential,
)

from src.llm_gateway.errors import MalformedReplyError, RemoteRequestError, RetryExhaustedError
from src.llm_gateway.models import BackendConfig, ChatRequest, ChatResponse, FinishReason, Usage

logger = logging.getLogger(__name__)

_FINISH_REASONS: dict[str | None, FinishReason] = {
    None: FinishReason.COMPLETE,
    "stop": FinishReason.COMPLETE,
    "eos": FinishReason.COMPLETE,
    "length": FinishReason.LENGTH,
}


class _TransientStatusError(Exception):
    def __init__(self, status_code: int) -> None:
        super().__init__(f"server error {status_code}")
        self.status_code = status_code


class RemoteBackend:
    """OpenAI-compatible `POST {endpoint}/chat/completions` client.

    Transport failures and 5xx replies are retried with exponential backoff;
    any other status fails immediately.
    """

    def __init__(
        self,
        config: BackendConfig,
        transport: httpx.AsyncBaseTransport | None = None,
    ) -> None:
        if not config.endpoint:
            raise ValueError("remote backend requires an endpoint")
        self._config = config
        self._url = f"{config.endpoint.rstrip('/')}/chat/completions"
        headers = {"Content-Type": "application/json"}
        api_key = os.environ.get(config.api_key_env)
        if api_key:
            headers["Authorization"] = f"Bearer {api_key}"
        else:
            logger.debug(f"{config.api_key_env} is not set; sending requests without a token")
        self._client = httpx.AsyncClient(
            timeout=config.timeout, headers=headers, transport=transport
        )

    async def complete(self, request: ChatRequest) -> ChatResponse:
        body = {
            "model": request.model_id,
            "messages": request.to_messages(),
            "temperature": request.temperature,
            "max_tokens": request.max_tokens,
        }
        retrying = AsyncRetrying(
            stop=stop_after_attempt(self._config.max_attempts),
            wait=wait_exponential(multiplier=self._config.backoff_initial, min=0, max=60),
            retry=retry_if_exception_type((httpx.TransportError, _TransientStatusError)),
        )
        data: Any = None
        try:
            async for attempt in retrying:
                with attempt:
                    number = attempt.retry_state.attempt_number
                    logger.info(
                        f"Chat request attempt {number}/{self._config.max_attempts}",
                        extra={"role": request.role, "attempt": number, "url": self._url},
                    )
                    data = await self._post(body, request.role, number)
        except RetryError as e:
            cause = e.last_attempt.exception()
            raise RetryExhaustedError(
                f"Chat request failed after {self._config.max_attempts} attempts: {cause}"
            ) from cause
        return _parse_reply(data)

    async def _post(self, body: dict[str, Any], role: str, attempt: int) -> Any:
        try:
            response = await self._client.post(self._url, json=body)
        except httpx.TransportError as e:
            logger.warning(
                f"Chat request transport failure: {e}",
                extra={"role": role, "attempt": attempt},
            )
            raise
        if response.status_code >= 500 or response.status_code == 429:
            logger.warning(
                f"Chat request server error {response.status_code}",
                extra={"role": role, "attempt": attempt, "status_code": response.status_code},
            )
            raise _TransientStatusError(response.status_code)
        if response.status_code >= 400:
            raise RemoteRequestError(
                f"Chat endpoint rejected the request: {response.status_code} {response.text[:200]}"
            )
        try:
            return response.json()
        except ValueError as e:
            raise MalformedReplyError("Chat endpoint returned a non-JSON body") from e

    async def aclose(self) -> None:
        await self._client.aclose()


def _parse_reply(data: Any) -> ChatResponse:
    try:
        choice = data["choices"][0]
        content = choice["message"].get("content")
        raw_reason = choice.get("finish_reason")
    except (KeyError, IndexError, TypeError, AttributeError) as e:
        raise MalformedReplyError(f"Reply lacks choices[0].message: {e}") from e

    finish_reason = _FINISH_REASONS.get(raw_reason, FinishReason.ERROR)
    if finish_reason is FinishReason.COMPLETE and not isinstance(content, str):
        raise MalformedReplyError("Reply carries no message content")

    usage_data = data.get("usage") or {}
    usage = Usage(
        prompt_tokens=usage_data.get("prompt_tokens", 0) or 0,
        completion_tokens=usage_data.get("completion_tokens", 0) or 0,
        total_tokens=usage_data.get("total_tokens", 0) or 0,
    )
    return ChatResponse(
        text=content if isinstance(content, str) else None,
        finish_reason=finish_reason,
        usage=usage,
    )
