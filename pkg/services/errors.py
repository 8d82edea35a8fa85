# services/errors.py

from typing import Any, Optional


class NerveLabError(Exception):
    """Base class for all errors raised by the services package"""


class InvalidArgument(NerveLabError, ValueError):
    """Raised when an operation is called outside its documented domain"""


class InvariantViolation(NerveLabError, RuntimeError):
    """Raised when an internal invariant does not hold (should be unreachable)"""


class ResourceCapExceeded(NerveLabError):
    """Raised when a construction would exceed a configured resource cap"""

    def __init__(self, resource: str, limit: int, requested: Optional[int] = None):
        self.resource = resource
        self.limit = limit
        self.requested = requested
        detail = f" (requested {requested})" if requested is not None else ""
        super().__init__(f"{resource} cap of {limit} exceeded{detail}")


class NonFreeActionError(NerveLabError):
    """Raised when a quotient is requested for an action that is not free"""

    def __init__(self, group_element: Any, fixed_element: Any):
        self.group_element = group_element
        self.fixed_element = fixed_element
        super().__init__(
            f"action is not free: {group_element} fixes {fixed_element}"
        )
