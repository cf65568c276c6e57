"""
**Context: Recovery**.

Exact recovery of planted clusters in random graphs: the generative models,
the information-theoretic thresholds, the SDP relaxations and their dual
certificates, the brute-force oracle, and the Monte Carlo experiments that
tie them together.
"""
