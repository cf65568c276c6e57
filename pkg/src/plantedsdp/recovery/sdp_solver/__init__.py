"""Context: Recovery || **Category: SDP Solver**."""
