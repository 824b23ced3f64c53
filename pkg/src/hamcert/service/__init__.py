"""HTTP service wrapping the core package. Run with: uvicorn hamcert.service:app"""

from .app import app

__all__ = ["app"]
