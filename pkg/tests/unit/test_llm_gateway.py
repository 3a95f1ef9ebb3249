"""Unit tests for the chat completion gateway and its backends."""

import json
import time

import httpx
import pytest
from pydantic import ValidationError

from src.llm_gateway import (
    BackendConfig,
    BackendKind,
    CassetteMismatchError,
    CassetteRecord,
    CassetteWriteError,
    ChatRequest,
    ChatResponse,
    ChatTurn,
    FinishReason,
    GatewayError,
    MalformedReplyError,
    RemoteRequestError,
    RetryExhaustedError,
    ScriptedBackend,
    ScriptUnderrunError,
    TokenBucket,
    create_gateway,
    read_cassette,
    record_replay,
    write_cassette,
)

ENDPOINT = "http://llm.test/v1"


def request(role: str = "HotelExpert", text: str = "Find hotels in Rome") -> ChatRequest:
    return ChatRequest(
        role=role,
        system_prompt="You are a hotel expert.",
        turns=(ChatTurn(speaker="user", text=text),),
    )


def remote_config(**overrides) -> BackendConfig:
    values = {
        "kind": BackendKind.REMOTE,
        "endpoint": ENDPOINT,
        "max_attempts": 3,
        "backoff_initial": 0.0,
    }
    values.update(overrides)
    return BackendConfig(**values)


def completion(content: str | None = "hotel_search(Rome)", finish_reason: str = "stop") -> dict:
    return {
        "choices": [{"message": {"content": content}, "finish_reason": finish_reason}],
        "usage": {"prompt_tokens": 12, "completion_tokens": 4, "total_tokens": 16},
    }


class TestChatRequest:
    """Test suite for ChatRequest."""

    def test_needs_content(self):
        """Should reject a request with no prompt and no turns."""
        with pytest.raises(ValidationError, match="system prompt or at least one turn"):
            ChatRequest(role="HotelExpert")

    def test_digest_ignores_role_and_sampling(self):
        """Should hash only the prompt content."""
        a = request()
        b = a.model_copy(update={"temperature": 0.7, "role": "Other"})
        assert a.digest() == b.digest()
        assert a.digest() != request(text="Find hotels in Lisbon").digest()

    def test_to_messages(self):
        """Should put the system prompt first."""
        messages = request().to_messages()
        assert messages[0] == {"role": "system", "content": "You are a hotel expert."}
        assert messages[1] == {"role": "user", "content": "Find hotels in Rome"}


class TestBackendConfig:
    """Test suite for BackendConfig validation."""

    def test_remote_requires_endpoint(self):
        """Should reject a remote backend without an endpoint."""
        with pytest.raises(ValidationError, match="requires an endpoint"):
            BackendConfig(kind=BackendKind.REMOTE)

    def test_scripted_requires_script(self):
        """Should reject a scripted backend without a cassette."""
        with pytest.raises(ValidationError, match="requires a script path"):
            BackendConfig(kind=BackendKind.SCRIPTED)

    def test_digest_fields_skip_paths(self, tmp_path):
        """Should leave per-task paths out of the configuration digest."""
        config = BackendConfig(script_path=tmp_path / "t01.jsonl")
        assert "script_path" not in config.digest_fields()
        assert config.digest_fields()["kind"] == "scripted"


class TestScriptedBackend:
    """Test suite for cassette replay."""

    async def test_per_role_queues(self):
        """Should serve each role from its own queue in order."""
        backend = ScriptedBackend(
            [
                CassetteRecord(role="HotelExpert", response_text="h1"),
                CassetteRecord(role="TransportExpert", response_text="t1"),
                CassetteRecord(role="HotelExpert", response_text="h2"),
            ]
        )
        assert (await backend.complete(request("TransportExpert"))).text == "t1"
        assert (await backend.complete(request("HotelExpert"))).text == "h1"
        assert (await backend.complete(request("HotelExpert"))).text == "h2"
        assert backend.remaining("HotelExpert") == 0

    async def test_underrun(self):
        """Should fail once a role's queue is empty."""
        backend = ScriptedBackend([CassetteRecord(role="HotelExpert", response_text="h1")])
        await backend.complete(request())
        with pytest.raises(ScriptUnderrunError, match="no scripted response left for HotelExpert"):
            await backend.complete(request())

    async def test_digest_match(self):
        """Should replay a record whose digest matches the request."""
        record = CassetteRecord(
            role="HotelExpert", request_digest=request().digest(), response_text="ok"
        )
        response = await ScriptedBackend([record]).complete(request())
        assert response.text == "ok"
        assert response.finish_reason is FinishReason.COMPLETE

    async def test_digest_mismatch(self):
        """Should stop when the request diverges from the recorded one."""
        record = CassetteRecord(
            role="HotelExpert", request_digest=request().digest(), response_text="ok"
        )
        backend = ScriptedBackend([record], source="t01.jsonl")
        with pytest.raises(CassetteMismatchError, match="t01.jsonl: request diverges at turn 1"):
            await backend.complete(request(text="Something else"))

    async def test_missing_file_is_empty(self, tmp_path):
        """Should treat a missing cassette as empty and underrun on first use."""
        backend = ScriptedBackend.from_path(tmp_path / "absent.jsonl")
        with pytest.raises(ScriptUnderrunError):
            await backend.complete(request())

    def test_invalid_line(self, tmp_path):
        """Should name the line of a corrupt record."""
        path = tmp_path / "bad.jsonl"
        path.write_text('{"role": "HotelExpert", "response_text": "ok"}\n{"role": 3}\n')
        with pytest.raises(GatewayError, match="bad.jsonl line 2"):
            read_cassette(path)

    def test_write_and_read(self, tmp_path):
        """Should write one JSON object per line."""
        path = tmp_path / "nested" / "t01.jsonl"
        records = [CassetteRecord(role="PlanCritic", response_text="PLAN APPROVED")]
        write_cassette(path, records)
        assert json.loads(path.read_text().splitlines()[0])["role"] == "PlanCritic"
        assert read_cassette(path) == records


class TestRecording:
    """Test suite for cassette recording."""

    async def test_gateway_records_every_exchange(self, tmp_path):
        """Should append request digests and replies that replay cleanly."""
        script = tmp_path / "script.jsonl"
        write_cassette(script, [CassetteRecord(role="HotelExpert", response_text="hi")])
        recorded = tmp_path / "recorded.jsonl"
        gateway = create_gateway(BackendConfig(script_path=script, record_path=recorded))
        await gateway.complete(request())
        await gateway.aclose()

        records = read_cassette(recorded)
        assert records == [
            CassetteRecord(
                role="HotelExpert", request_digest=request().digest(), response_text="hi"
            )
        ]
        replay = ScriptedBackend(records)
        assert (await replay.complete(request())).text == "hi"

    def test_record_replay_requires_path(self, tmp_path):
        """Should refuse to record without a record path."""
        config = BackendConfig(script_path=tmp_path / "s.jsonl")
        with pytest.raises(CassetteWriteError, match="recording is not enabled"):
            record_replay(config, request(), ChatResponse(text="x"))

    def test_record_replay_appends(self, tmp_path):
        """Should append one line per call."""
        config = BackendConfig(
            script_path=tmp_path / "s.jsonl", record_path=tmp_path / "r.jsonl"
        )
        record_replay(config, request(), ChatResponse(text="one"))
        record_replay(config, request(), ChatResponse(text="two"))
        assert [r.response_text for r in read_cassette(tmp_path / "r.jsonl")] == ["one", "two"]


class TestRemoteBackend:
    """Test suite for the HTTP backend against a stub transport."""

    async def test_success(self, monkeypatch):
        """Should post the chat payload with the bearer token and parse the reply."""
        monkeypatch.setenv("TRAVEL_MAS_API_KEY", "sk-test")
        seen = []

        def handler(http_request: httpx.Request) -> httpx.Response:
            seen.append(http_request)
            return httpx.Response(200, json=completion())

        gateway = create_gateway(remote_config(), transport=httpx.MockTransport(handler))
        response = await gateway.complete(request())
        await gateway.aclose()

        assert response.text == "hotel_search(Rome)"
        assert response.usage.total_tokens == 16
        assert gateway.usage.total_tokens == 16
        assert str(seen[0].url) == f"{ENDPOINT}/chat/completions"
        assert seen[0].headers["Authorization"] == "Bearer sk-test"
        body = json.loads(seen[0].content)
        assert body["model"] == "gpt-4o"
        assert body["messages"][0]["role"] == "system"

    async def test_retries_transient_failures(self):
        """Should succeed on the third attempt after two failures."""
        attempts = []

        def handler(http_request: httpx.Request) -> httpx.Response:
            attempts.append(http_request)
            if len(attempts) == 1:
                raise httpx.ConnectError("connection refused")
            if len(attempts) == 2:
                return httpx.Response(503, text="busy")
            return httpx.Response(200, json=completion("done"))

        gateway = create_gateway(remote_config(), transport=httpx.MockTransport(handler))
        response = await gateway.complete(request())
        await gateway.aclose()

        assert response.text == "done"
        assert len(attempts) == 3

    async def test_retry_exhausted(self):
        """Should give up after max_attempts server errors."""
        attempts = []

        def handler(http_request: httpx.Request) -> httpx.Response:
            attempts.append(http_request)
            return httpx.Response(500, text="boom")

        gateway = create_gateway(
            remote_config(max_attempts=2), transport=httpx.MockTransport(handler)
        )
        with pytest.raises(RetryExhaustedError, match="after 2 attempts"):
            await gateway.complete(request())
        await gateway.aclose()
        assert len(attempts) == 2

    async def test_rate_limited_reply_is_retried(self):
        """Should treat 429 like a server error."""
        replies = iter(
            [httpx.Response(429, text="slow down"), httpx.Response(200, json=completion("ok"))]
        )
        transport = httpx.MockTransport(lambda _: next(replies))

        gateway = create_gateway(remote_config(), transport=transport)
        response = await gateway.complete(request())
        await gateway.aclose()

        assert response.text == "ok"

    async def test_client_error_not_retried(self):
        """Should fail at once on a 4xx reply."""
        attempts = []

        def handler(http_request: httpx.Request) -> httpx.Response:
            attempts.append(http_request)
            return httpx.Response(401, text="bad key")

        gateway = create_gateway(remote_config(), transport=httpx.MockTransport(handler))
        with pytest.raises(RemoteRequestError, match="401"):
            await gateway.complete(request())
        await gateway.aclose()
        assert len(attempts) == 1

    @pytest.mark.parametrize(
        "payload",
        [
            {"choices": []},
            {"result": "hello"},
            {"choices": [{"message": {"content": None}, "finish_reason": "stop"}]},
        ],
    )
    async def test_malformed_reply(self, payload):
        """Should reject replies without message content."""
        transport = httpx.MockTransport(lambda _: httpx.Response(200, json=payload))
        gateway = create_gateway(remote_config(), transport=transport)
        with pytest.raises(MalformedReplyError):
            await gateway.complete(request())
        await gateway.aclose()

    async def test_non_json_body(self):
        """Should reject a body that is not JSON."""
        transport = httpx.MockTransport(lambda _: httpx.Response(200, text="<html>"))
        gateway = create_gateway(remote_config(), transport=transport)
        with pytest.raises(MalformedReplyError, match="non-JSON"):
            await gateway.complete(request())
        await gateway.aclose()

    async def test_length_finish_reason(self):
        """Should report truncated replies as length-limited."""
        transport = httpx.MockTransport(
            lambda _: httpx.Response(200, json=completion("Day 1:", finish_reason="length"))
        )
        gateway = create_gateway(remote_config(), transport=transport)
        response = await gateway.complete(request())
        await gateway.aclose()
        assert response.finish_reason is FinishReason.LENGTH
        assert response.text == "Day 1:"


class TestTokenBucket:
    """Test suite for the shared rate limiter."""

    def test_rejects_zero_rate(self):
        """Should require at least one request per minute."""
        with pytest.raises(ValueError):
            TokenBucket(0)

    async def test_burst_then_wait(self):
        """Should allow a burst up to capacity, then pace further requests."""
        bucket = TokenBucket(requests_per_minute=600, capacity=2)
        start = time.monotonic()
        await bucket.acquire()
        await bucket.acquire()
        burst = time.monotonic() - start
        await bucket.acquire()
        total = time.monotonic() - start
        assert burst < 0.05
        assert total >= 0.05
