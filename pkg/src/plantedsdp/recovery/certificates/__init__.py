"""Context: Recovery || **Category: Certificates**."""
