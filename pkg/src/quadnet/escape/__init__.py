from quadnet.escape.bound import (
    EscapeBound,
    check_dominance,
    default_delta,
    escape_bound,
    max_delta,
    verify_escape,
)

__all__ = ["EscapeBound", "check_dominance", "default_delta", "escape_bound", "max_delta", "verify_escape"]
