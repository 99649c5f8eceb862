"""Registry of the supported error-correction schemes.

The registry is a closed enumeration: every scheme here has recovery
synthesis and test coverage.  Scheme names accepted on the command line:

    bit3, dfs2, concat6, unencoded      -- base names, combined with a
                                           flavor ('bit' default, 'phase')
    phase3, dfs2-phase, concat6-phase   -- aliases forcing the phase flavor

The correctable set, and hence the recovery structure, depends only on the
code and the channel's operator support, never on (p, mu); recovery sets
are therefore cached per (scheme, flavor).
"""

from __future__ import annotations

from functools import lru_cache

from . import codes
from .channels import FLAVOR_BIT, FLAVOR_PHASE, MODEL_I, ChannelParams, model1_channel
from .codes import QuantumCode
from .errors import ParameterError
from .recovery import RecoverySet, build_recovery, correctable_set

BASE_SCHEMES = ("bit3", "dfs2", "concat6", "unencoded")

_ALIASES = {
    "phase3": ("bit3", FLAVOR_PHASE),
    "dfs2-phase": ("dfs2", FLAVOR_PHASE),
    "concat6-phase": ("concat6", FLAVOR_PHASE),
}

_QUBITS = {"bit3": 3, "dfs2": 2, "concat6": 6, "unencoded": 1}


def resolve_scheme(name: str, flavor: str | None = None) -> tuple[str, str]:
    """Map a scheme name plus optional flavor flag to (base, flavor)."""
    if name in _ALIASES:
        base, forced = _ALIASES[name]
        if flavor is not None and flavor != forced:
            raise ParameterError(f"scheme {name!r} implies flavor {forced!r}, got {flavor!r}")
        return base, forced
    if name not in BASE_SCHEMES:
        known = ", ".join(list(BASE_SCHEMES) + sorted(_ALIASES))
        raise ParameterError(f"unknown scheme {name!r}; known schemes: {known}")
    if flavor is None:
        flavor = FLAVOR_BIT
    if flavor not in (FLAVOR_BIT, FLAVOR_PHASE):
        raise ParameterError(f"flavor must be 'bit' or 'phase', got {flavor!r}")
    return name, flavor


def scheme_qubits(base: str) -> int:
    return _QUBITS[base]


def build_code(base: str, flavor: str) -> QuantumCode | None:
    """Codewords for a base scheme; None for the unencoded single qubit."""
    if base == "bit3":
        return codes.bitflip3() if flavor == FLAVOR_BIT else codes.phaseflip3()
    if base == "dfs2":
        return codes.dfs2(flavor)
    if base == "concat6":
        if flavor == FLAVOR_BIT:
            return codes.concatenate(codes.dfs2("bit"), codes.bitflip3(), label="concat6")
        # Conjugation acts on the physical qubits, so the phase-flavor code
        # keeps the bit-flavor expansion coefficients at the top level and
        # substitutes the phase-flip block pair: this equals the bit-flavor
        # code rotated by H on every qubit, which mirrors the Z-string noise
        # exactly.  Substituting phase codewords into the phase-flavor pair
        # |01>/|10> instead yields |+++--->/|---+++>, whose protection under
        # Z-strings is not equivalent (it loses the degenerate pairing).
        return codes.concatenate(codes.dfs2("bit"), codes.phaseflip3(), label="concat6-phase")
    if base == "unencoded":
        return None
    raise ParameterError(f"unknown base scheme {base!r}")


@lru_cache(maxsize=None)
def scheme_recovery(base: str, flavor: str) -> tuple[QuantumCode, RecoverySet]:
    """Code plus synthesized recovery for an encoded scheme (cached).

    The channel used for the derivation only supplies the operator support,
    which is the full set of X-strings (Z-strings) on n qubits for both
    models at any parameter point.
    """
    code = build_code(base, flavor)
    if code is None:
        raise ParameterError("the unencoded scheme has no recovery operation")
    params = ChannelParams(p=0.5, mu=0.5, n=code.n, flavor=flavor, model=MODEL_I)
    channel = model1_channel(params)
    correctable = correctable_set(code, channel)
    return code, build_recovery(code, correctable)
