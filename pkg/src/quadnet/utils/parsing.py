"""
Parsing of the textual forms used on the command line: complex numbers ("-1.15+0.26i"),
windows ("-2,1,-1.5,1.5") and resolutions ("400x400").
"""
from __future__ import annotations

import regex as re

from quadnet.errors import ConfigError

_REAL = r"[+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?"

COMPLEX_RE = re.compile(
    rf"^\s*(?:(?P<re>{_REAL})(?:(?P<im>[+-](?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?(?P<unit>[ij])?)|(?P<bare>[+-]?)[ij])\s*$"
)
RESOLUTION_RE = re.compile(r"^\s*(?P<w>\d+)\s*[xX]\s*(?P<h>\d+)\s*$")
# tokens that argparse would otherwise mistake for options
NEGATIVE_VALUE_RE = re.compile(r"^-(?:\d|\.\d|[ij]$)")


def parse_complex(text: str, field: str = "complex") -> complex:
    """
    Parse ``a+bi``, ``a-bi``, ``a``, ``bi`` or ``i`` (``j`` accepted as well).
    """
    s = str(text).replace(" ", "")
    m = COMPLEX_RE.match(s)
    if not m:
        raise ConfigError(field, f"not a complex number of the form a+bi: {text!r}")
    if m.group("bare") is not None and m.group("re") is None:
        return complex(0.0, -1.0 if m.group("bare") == "-" else 1.0)
    re_part = float(m.group("re"))
    im_text = m.group("im")
    unit = m.group("unit")
    if im_text is None:
        # "2.5" is real, "2.5i" is purely imaginary
        return complex(0.0, re_part) if unit else complex(re_part, 0.0)
    if not unit:
        raise ConfigError(field, f"imaginary part needs a trailing 'i': {text!r}")
    return complex(re_part, float(im_text))


def format_complex(z: complex) -> str:
    """Inverse of :func:`parse_complex` (repr precision)."""
    sign = "-" if (z.imag < 0 or (z.imag == 0 and str(z.imag).startswith("-"))) else "+"
    return f"{z.real!r}{sign}{abs(z.imag)!r}i"


def parse_window(text: str, field: str = "--window") -> tuple[float, float, float, float]:
    """``re_min,re_max,im_min,im_max``"""
    parts = [p for p in str(text).split(",")]
    if len(parts) != 4:
        raise ConfigError(field, f"expected re_min,re_max,im_min,im_max, got {text!r}")
    try:
        values = tuple(float(p) for p in parts)
    except ValueError as e:
        raise ConfigError(field, f"non-numeric window bound in {text!r}") from e
    return values  # type: ignore[return-value]


def parse_resolution(text: str, field: str = "--res") -> tuple[int, int]:
    """``WxH`` -> (width, height)"""
    m = RESOLUTION_RE.match(str(text))
    if not m:
        raise ConfigError(field, f"expected WIDTHxHEIGHT, got {text!r}")
    w, h = int(m.group("w")), int(m.group("h"))
    if w <= 0 or h <= 0:
        raise ConfigError(field, f"resolution must be positive, got {text!r}")
    return w, h


def glue_negative_values(argv: list[str]) -> list[str]:
    """
    Join ``--flag -1.15+0.26i`` into ``--flag=-1.15+0.26i`` so argparse does not read
    negative complex numbers or windows as option strings.
    """
    out: list[str] = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        if (
            tok.startswith("--")
            and "=" not in tok
            and i + 1 < len(argv)
            and NEGATIVE_VALUE_RE.match(argv[i + 1])
        ):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
            continue
        out.append(tok)
        i += 1
    return out
