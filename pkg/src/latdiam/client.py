"""Thin HTTP client for the latdiam service.

Without a base URL the client drives the ASGI app in-process, so the CLI
works with no server running; with ``--server`` it talks to a live instance.
Either way the CLI sees the same wire format and status-code contract.
"""

from __future__ import annotations

import asyncio

import httpx

from .errors import InputError, InternalError


class ServiceClient:
    def __init__(self, base_url: str | None = None):
        self.base_url = base_url

    def post(self, path: str, payload: dict) -> dict:
        if self.base_url:
            try:
                with httpx.Client(base_url=self.base_url, timeout=None) as client:
                    response = client.post(path, json=payload)
            except httpx.HTTPError as exc:
                raise InputError(f"cannot reach service at {self.base_url}: {exc}")
        else:
            response = asyncio.run(self._asgi_post(path, payload))
        return self._handle(response)

    async def _asgi_post(self, path: str, payload: dict):
        from .service.app import app

        transport = httpx.ASGITransport(app=app)
        async with httpx.AsyncClient(
            transport=transport, base_url="http://latdiam.internal", timeout=None
        ) as client:
            return await client.post(path, json=payload)

    @staticmethod
    def _handle(response) -> dict:
        if response.status_code == 200:
            return response.json()
        try:
            body = response.json()
        except ValueError:
            body = {"detail": response.text}
        detail = body.get("detail", "request failed")
        if response.status_code in (400, 404, 422):
            raise InputError(f"{detail}")
        raise InternalError(str(detail), dump=body.get("dump", {}))
