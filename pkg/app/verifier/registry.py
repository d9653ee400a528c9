"""Check registry for the bound verifier.

Checks register themselves by name so the suite, the CLI and the service can select them without importing the
concrete classes.
"""

from typing import ClassVar

from app.verifier.base import BoundCheck


class CheckRegistry:
    """Registry for check classes."""

    _registry: ClassVar[dict[str, type[BoundCheck]]] = {}

    @classmethod
    def register(cls, name: str, check_cls: type[BoundCheck]) -> None:
        """Register a check class with a given name."""
        cls._registry[name] = check_cls

    @classmethod
    def get(cls, name: str) -> type[BoundCheck]:
        """Retrieve a check class by name."""
        return cls._registry[name]

    @classmethod
    def available(cls) -> list[str]:
        """List all registered check names."""
        return sorted(cls._registry)

    @classmethod
    def selected(cls, *, strict: bool) -> list[type[BoundCheck]]:
        """Checks to run: the strict-only variants are included only in strict mode."""
        return [check for name, check in sorted(cls._registry.items()) if strict or not check.strict_only]
