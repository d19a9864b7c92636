"""Runtime switches read from the environment.

``SYZKIT_PRIME``  enables the advisory prime-field mode for rank queries.
                  "1"/"on"/"true" selects the default prime 2**31 - 1, an
                  integer selects that prime (must be < 2**31).
``SYZKIT_NUMBA``  "0" forces the pure-numpy path of the modular kernels.
"""

from __future__ import annotations

import os

DEFAULT_PRIME = 2_147_483_647
MAX_PRIME = 1 << 31


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_modulus() -> int | None:
    """Return the active prime, or None in exact mode."""
    raw = os.environ.get("SYZKIT_PRIME", "").strip().lower()
    if raw in ("", "0", "off", "false", "no"):
        return None
    if raw in ("1", "on", "true", "yes"):
        return DEFAULT_PRIME
    try:
        p = int(raw)
    except ValueError:
        raise ValueError(f"SYZKIT_PRIME must be an integer or on/off, got {raw!r}") from None
    if not (2 < p < MAX_PRIME and _is_prime(p)):
        raise ValueError(f"SYZKIT_PRIME={p} is not an odd prime below 2**31")
    return p


def field_name() -> str:
    p = prime_modulus()
    return "QQ" if p is None else f"GF({p})"


def numba_requested() -> bool:
    return os.environ.get("SYZKIT_NUMBA", "1").strip() != "0"
