"""hidden-qubit source package."""

__version__ = "0.1.0"

# No eager submodule imports: callers import what they need.
