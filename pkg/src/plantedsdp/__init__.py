"""plantedsdp package: exact cluster recovery in planted random graphs by semidefinite programming."""
