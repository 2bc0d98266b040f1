"""Exact q-series engine for q-trinomial identities and trinomial Bailey pairs."""

__version__ = "0.1.0"
