"""Data models for chat completion requests, responses and backend configuration."""

import hashlib
import json
from enum import Enum
from pathlib import Path
from typing import Literal, Self

from pydantic import BaseModel, ConfigDict, Field, model_validator


class FinishReason(str, Enum):
    """Why a completion stopped."""

    COMPLETE = "complete"
    LENGTH = "length"
    ERROR = "error"


class BackendKind(str, Enum):
    """Which backend serves completions."""

    REMOTE = "remote"
    SCRIPTED = "scripted"


class ChatTurn(BaseModel):
    """One labelled turn of the prompt."""

    model_config = ConfigDict(frozen=True)

    speaker: Literal["user", "assistant"]
    text: str


class ChatRequest(BaseModel):
    """A single chat completion request.

    `role` names the requesting agent; the scripted backend keys its queues
    on it and the remote backend ignores it.
    """

    model_config = ConfigDict(frozen=True)

    role: str = Field(..., min_length=1)
    system_prompt: str = ""
    turns: tuple[ChatTurn, ...] = ()
    temperature: float = Field(default=0.0, ge=0.0)
    max_tokens: int = Field(default=2048, gt=0)
    model_id: str = Field(default="gpt-4o", min_length=1)

    @model_validator(mode="after")
    def validate_content(self) -> Self:
        if not self.turns and not self.system_prompt:
            raise ValueError("ChatRequest needs a system prompt or at least one turn")
        return self

    def digest(self) -> str:
        """Content hash shared by the recorder and the replayer."""
        payload = json.dumps(
            {
                "system_prompt": self.system_prompt,
                "turns": [[turn.speaker, turn.text] for turn in self.turns],
            },
            ensure_ascii=False,
            sort_keys=True,
        )
        return hashlib.sha256(payload.encode("utf-8")).hexdigest()

    def to_messages(self) -> list[dict[str, str]]:
        """Role-tagged message list of the chat completion wire format."""
        messages = [{"role": "system", "content": self.system_prompt}] if self.system_prompt else []
        messages.extend({"role": turn.speaker, "content": turn.text} for turn in self.turns)
        return messages


class Usage(BaseModel):
    """Token counts reported for one completion."""

    model_config = ConfigDict(frozen=True)

    prompt_tokens: int = Field(default=0, ge=0)
    completion_tokens: int = Field(default=0, ge=0)
    total_tokens: int = Field(default=0, ge=0)

    def __add__(self, other: "Usage") -> "Usage":
        return Usage(
            prompt_tokens=self.prompt_tokens + other.prompt_tokens,
            completion_tokens=self.completion_tokens + other.completion_tokens,
            total_tokens=self.total_tokens + other.total_tokens,
        )


class ChatResponse(BaseModel):
    """Model reply."""

    model_config = ConfigDict(frozen=True)

    text: str | None = None
    finish_reason: FinishReason = FinishReason.COMPLETE
    usage: Usage = Field(default_factory=Usage)

    @model_validator(mode="after")
    def validate_text(self) -> Self:
        if self.finish_reason is FinishReason.COMPLETE and self.text is None:
            raise ValueError("A complete response must carry text")
        return self


class BackendConfig(BaseModel):
    """Which backend to use and how to reach it."""

    model_config = ConfigDict(frozen=True)

    kind: BackendKind = BackendKind.SCRIPTED
    endpoint: str | None = Field(default=None, description="Chat completion base URL")
    api_key_env: str = Field(
        default="TRAVEL_MAS_API_KEY",
        description="Environment variable holding the bearer token",
    )
    model_id: str = Field(default="gpt-4o", min_length=1)
    max_attempts: int = Field(default=3, ge=1, le=10)
    backoff_initial: float = Field(default=1.0, ge=0.0)
    timeout: float = Field(default=60.0, gt=0)
    script_path: Path | None = Field(default=None, description="Cassette replayed in scripted mode")
    record_path: Path | None = Field(default=None, description="Cassette written while running")

    @model_validator(mode="after")
    def validate_kind(self) -> Self:
        if self.kind is BackendKind.REMOTE and not self.endpoint:
            raise ValueError("remote backend requires an endpoint")
        if self.kind is BackendKind.SCRIPTED and self.script_path is None:
            raise ValueError("scripted backend requires a script path")
        return self

    def digest_fields(self) -> dict[str, object]:
        """Fields that shape behaviour; per-task file paths are left out."""
        return self.model_dump(mode="json", exclude={"script_path", "record_path"})
