"""Chat-completion execution: providers, retries, and rate limiting."""

from __future__ import annotations

import os
import random
import threading
import time
from dataclasses import dataclass, field

import requests

from ..errors import CassetteMiss, ProviderError, RateLimited
from .cassette import Cassette, request_hash
from .prompts import ChatMessage

API_KEY_ENV = "CROWDOC_API_KEY"


@dataclass(frozen=True)
class LlmRequest:
    model: str
    messages: tuple[ChatMessage, ...]
    temperature: float = 0.8
    max_output_tokens: int | None = None

    def __post_init__(self):
        if not self.messages:
            raise ValueError("request needs at least one message")
        if not 0.0 <= self.temperature <= 2.0:
            raise ValueError("temperature must be in [0, 2]")

    @property
    def hash(self) -> str:
        return request_hash(self.model, self.temperature, self.messages)

    def summary(self) -> str:
        head = self.messages[-1].content
        return head[:120].replace("\n", " ")


@dataclass
class LlmResponse:
    text: str
    usage: dict | None = None
    provider_latency: float = 0.0
    attempts: int = 1


class TransientProviderError(ProviderError):
    """Retryable failure: HTTP 429/5xx or a timeout."""


class LiveProvider:
    """Plain chat-completions HTTP JSON provider."""

    def __init__(self, endpoint: str, api_key: str | None = None, session=None, timeout=120.0):
        self.endpoint = endpoint
        self.api_key = api_key if api_key is not None else os.environ.get(API_KEY_ENV, "")
        self.session = session or requests.Session()
        self.timeout = timeout

    def complete(self, request: LlmRequest) -> LlmResponse:
        payload = {
            "model": request.model,
            "messages": [{"role": m.role, "content": m.content} for m in request.messages],
            "temperature": request.temperature,
        }
        if request.max_output_tokens is not None:
            payload["max_tokens"] = request.max_output_tokens
        headers = {"Content-Type": "application/json"}
        if self.api_key:
            headers["Authorization"] = f"Bearer {self.api_key}"
        start = time.monotonic()
        try:
            resp = self.session.post(
                self.endpoint, json=payload, headers=headers, timeout=self.timeout
            )
        except requests.Timeout as exc:
            raise TransientProviderError(0, f"timeout: {exc}") from exc
        except requests.RequestException as exc:
            raise TransientProviderError(0, str(exc)) from exc
        latency = time.monotonic() - start
        if resp.status_code == 429 or resp.status_code >= 500:
            raise TransientProviderError(resp.status_code, resp.text)
        if resp.status_code != 200:
            raise ProviderError(resp.status_code, resp.text)
        data = resp.json()
        text = data["choices"][0]["message"]["content"]
        return LlmResponse(text=text, usage=data.get("usage"), provider_latency=latency)


class CassetteProvider:
    """Replays recorded responses; strict mode errors on unrecorded requests."""

    def __init__(self, cassette: Cassette, strict: bool = True, fallback=None):
        self.cassette = cassette
        self.strict = strict
        self.fallback = fallback

    def complete(self, request: LlmRequest) -> LlmResponse:
        h = request.hash
        if h in self.cassette:
            return LlmResponse(text=self.cassette.get(h))
        if self.strict or self.fallback is None:
            raise CassetteMiss(h)
        response = self.fallback.complete(request)
        self.cassette.record(h, request.summary(), response.text)
        return response


class RecordingProvider:
    """Wraps a provider, appending every exchange to a cassette."""

    def __init__(self, inner, cassette: Cassette):
        self.inner = inner
        self.cassette = cassette

    def complete(self, request: LlmRequest) -> LlmResponse:
        h = request.hash
        if h in self.cassette:
            return LlmResponse(text=self.cassette.get(h))
        response = self.inner.complete(request)
        self.cassette.record(h, request.summary(), response.text)
        return response


class TokenBucket:
    """Thread-safe requests-per-minute limiter."""

    def __init__(self, requests_per_minute: float, clock=time.monotonic, sleep=time.sleep):
        self.capacity = max(1.0, float(requests_per_minute))
        self.rate = self.capacity / 60.0
        self.tokens = self.capacity
        self.updated = clock()
        self.clock = clock
        self.sleep = sleep
        self.lock = threading.Lock()

    def acquire(self) -> None:
        while True:
            with self.lock:
                now = self.clock()
                self.tokens = min(self.capacity, self.tokens + (now - self.updated) * self.rate)
                self.updated = now
                if self.tokens >= 1.0:
                    self.tokens -= 1.0
                    return
                wait = (1.0 - self.tokens) / self.rate
            self.sleep(wait)


@dataclass
class RetryPolicy:
    max_attempts: int = 5
    base_delay: float = 1.0
    factor: float = 2.0


class LlmClient:
    """Provider wrapper adding retry with exponential backoff (full jitter)
    and a token-bucket rate limit. Safe to share across threads."""

    def __init__(
        self,
        provider,
        retry: RetryPolicy | None = None,
        requests_per_minute: float | None = None,
        sleep=time.sleep,
        rng: random.Random | None = None,
        observer=None,
    ):
        self.provider = provider
        self.retry = retry or RetryPolicy()
        self.bucket = (
            TokenBucket(requests_per_minute, sleep=sleep)
            if requests_per_minute
            else None
        )
        self.sleep = sleep
        self.rng = rng or random.Random()
        self.observer = observer
        self._observer_lock = threading.Lock()

    def complete(self, request: LlmRequest) -> LlmResponse:
        last_error: Exception | None = None
        for attempt in range(1, self.retry.max_attempts + 1):
            if self.bucket is not None:
                self.bucket.acquire()
            try:
                response = self.provider.complete(request)
                response.attempts = attempt
                if self.observer is not None:
                    with self._observer_lock:
                        self.observer(request, response)
                return response
            except TransientProviderError as exc:
                last_error = exc
                if attempt == self.retry.max_attempts:
                    break
                ceiling = self.retry.base_delay * (self.retry.factor ** (attempt - 1))
                self.sleep(self.rng.uniform(0.0, ceiling))
        raise RateLimited(
            f"gave up after {self.retry.max_attempts} attempts: {last_error}"
        )
