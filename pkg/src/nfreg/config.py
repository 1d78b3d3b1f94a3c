import os

DEFAULT_PRECISION = 128
ENV_VAR = "NFREG_PRECISION"


def default_precision() -> int:
    """Working precision in fractional bits; NFREG_PRECISION overrides the default."""
    raw = os.environ.get(ENV_VAR)
    if raw is None or not raw.strip():
        return DEFAULT_PRECISION
    bits = int(raw)
    if bits < 32:
        raise ValueError(f"{ENV_VAR}={raw} is below the 32-bit minimum")
    return bits
