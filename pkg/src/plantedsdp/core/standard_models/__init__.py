"""Models to represent core data structures of the Standardization Framework."""
