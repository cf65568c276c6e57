"""Common descriptions for model fields."""

QUERY_DESCRIPTIONS = {
    "kind": "Planted model: SBM (two equal halves), PDS (one dense cluster) or the general PlantedCluster model.",
    "n": "Number of vertices.",
    "r": "Number of planted clusters.",
    "K": "Size of each planted cluster.",
    "rho": "Cluster fraction; K = floor(rho * n) for PDS.",
    "a": "In-cluster intensity; p = a ln(n) / n.",
    "b": "Background intensity; q = b ln(n) / n.",
    "p": "In-cluster edge probability (overrides a).",
    "q": "Background edge probability (overrides b).",
    "seed": "Seed of the random generator.",
    "regime": "AGreater when a > b, BGreater when a < b.",
}

DATA_DESCRIPTIONS = {
    "a": "In-cluster intensity of the grid point.",
    "b": "Background intensity of the grid point.",
    "rho": "Cluster fraction of the grid point.",
    "n": "Number of vertices.",
    "trials": "Number of trials run at the grid point, 0 when the point was skipped.",
    "successes": "Number of trials with exact recovery.",
    "wilson_lo": "Lower end of the 95% Wilson interval for the success rate; null when skipped.",
    "wilson_hi": "Upper end of the 95% Wilson interval for the success rate; null when skipped.",
    "theory_margin": "Signed distance to the exact-recovery threshold (positive means recoverable).",
    "point_index": "Index of the grid point in row-major (a, b) order.",
    "trial_index": "Index of the trial within its grid point.",
    "seed": "Seed the trial instance was sampled from.",
    "method": "Trial method: Certificate, SdpSolve or Both.",
    "certificate_pass": "Whether the dual certificate verified; null when not run.",
    "sdp_integral": "Whether the SDP optimum equals the planted matrix; null when not run.",
    "rounding_agrees": "Whether rounding the SDP solution returns the truth; null when not run.",
    "witness_found": "Whether an improving swap against the truth exists; null when not run.",
    "event_e1": "E1 statistic of the converse analysis; null when not computed.",
    "event_e2": "E2 statistic of the converse analysis; null when not computed.",
    "event_e3": "E3 statistic of the converse analysis; null when not computed.",
    "solver_iterations": "ADMM iterations used; null when the solver did not run.",
    "wall_time_ms": "Wall time of the trial in milliseconds.",
    "failure_reason": "Error raised during the trial, if any.",
    "p": "Edge probability of the G(n, p) sample.",
    "ratio": "||A - E[A]|| / sqrt(n p).",
    "floor": "Lower-order growth reference sqrt(ln n / ln(ln n / (n p))); null for the ConstTimesLogOverN rule.",
}
