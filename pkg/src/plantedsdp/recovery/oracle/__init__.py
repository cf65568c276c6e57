"""Context: Recovery || **Category: Oracle**."""
