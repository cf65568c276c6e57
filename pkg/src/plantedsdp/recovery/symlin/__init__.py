"""Context: Recovery || **Category: Symmetric Linear Algebra**."""
