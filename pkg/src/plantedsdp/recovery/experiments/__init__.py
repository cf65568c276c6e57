"""Context: Recovery || **Category: Experiments**."""
