"""Abstract core DATA MODELS to be inherited by other models."""
