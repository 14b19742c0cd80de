"""Deliberate defects used to check that the verification campaigns are not vacuous.

Three core mutations are documented:

``sign``
    drop the ``(-1)^(v(f) v(g))`` factor of the local tame symbol;
``norm-exponent``
    negate the norm exponent, so every norm map returns ``Nm(a)^(-1)``;
``frobenius-direction``
    push classes forward along the inverse of the q-power map.

A mutation is active inside ``with mutated("sign"):`` or when the
``TAMESYMBOL_MUTATION`` environment variable names it (comma separated).
"""

import contextlib
import os

KNOWN = ("sign", "norm-exponent", "frobenius-direction")
ENV_VAR = "TAMESYMBOL_MUTATION"

_active = set()


def active(name):
    if name in _active:
        return True
    return name in env_mutations()


def env_mutations():
    env = os.environ.get(ENV_VAR, "")
    return {s.strip() for s in env.split(",") if s.strip()}


def any_active():
    return bool(_active) or bool(env_mutations())


def active_names():
    return sorted(_active | env_mutations())


def check_env():
    """Raise ValueError for unknown names in the environment variable."""
    bad = sorted(env_mutations() - set(KNOWN))
    if bad:
        raise ValueError(f"unknown mutation(s) in {ENV_VAR}: {', '.join(bad)}")


@contextlib.contextmanager
def mutated(*names):
    for name in names:
        if name not in KNOWN:
            raise ValueError(f"unknown mutation {name!r}")
    added = [n for n in names if n not in _active]
    _active.update(added)
    try:
        yield
    finally:
        _active.difference_update(added)
