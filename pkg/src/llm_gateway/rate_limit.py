"""Token bucket shared by every run that talks to the remote backend."""

import asyncio
import time


class TokenBucket:
    """Allows `requests_per_minute` acquisitions per minute with bursts up to `capacity`."""

    def __init__(self, requests_per_minute: int, capacity: int | None = None) -> None:
        if requests_per_minute < 1:
            raise ValueError("requests_per_minute must be at least 1")
        self.rate = requests_per_minute / 60.0
        self.capacity = float(capacity if capacity is not None else requests_per_minute)
        self._tokens = self.capacity
        self._updated = time.monotonic()
        self._lock = asyncio.Lock()

    def _refill(self) -> None:
        now = time.monotonic()
        self._tokens = min(self.capacity, self._tokens + (now - self._updated) * self.rate)
        self._updated = now

    async def acquire(self) -> None:
        """Wait until a token is available, then take it."""
        async with self._lock:
            self._refill()
            while self._tokens < 1:
                await asyncio.sleep((1 - self._tokens) / self.rate)
                self._refill()
            self._tokens -= 1
