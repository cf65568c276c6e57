"""Context: Recovery || **Category: Graph Models**."""
