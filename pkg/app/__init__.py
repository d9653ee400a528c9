"""Main application package for cubic-wave-periodic."""

# cubic-wave-periodic

# Spectral solver, bound verifier, CLI and HTTP service. See submodules for details.
