"""
Shared plumbing behind the `recovery` context.

Parameter and result models, the error hierarchy, logging, settings and
worker pools live here. Nothing in `core` knows about graphs or SDPs.
"""
