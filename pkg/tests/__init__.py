"""plantedsdp test suite."""
