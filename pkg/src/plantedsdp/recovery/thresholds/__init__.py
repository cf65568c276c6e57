"""Context: Recovery || **Category: Thresholds**."""
