"""
plantedsdp core utils.

Utils keeps the helpers, descriptions, constants, logging and environment.
"""
