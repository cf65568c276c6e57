"""
Context: Recovery || **Category: Experiments**.

Standard models of the Monte Carlo experiments: per-trial records, phase
diagram sweeps and spectral scaling tables.
"""
