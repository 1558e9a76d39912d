"""Text formats for states.

QST (pure state)::

    QST 1
    n <qubits>
    <re> <im>          # 2**n lines, ascending basis index

QDM (density matrix)::

    QDM 1
    n <qubits>
    <re>,<im> <re>,<im> ...   # 2**n rows of 2**n entries

Lines whose first non-blank character is ``#`` and blank lines are ignored
anywhere. Floats are written with 17 significant digits so a round trip is
lossless.
"""

from pathlib import Path

import numpy as np

from .errors import ParseError
from .states import DensityMatrix, StateVector

_FMT = "{:.17g}"


def _content_lines(text):
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if stripped and not stripped.startswith("#"):
            yield lineno, stripped


def _float(tok, lineno):
    try:
        return float(tok)
    except ValueError:
        raise ParseError(f"cannot parse number {tok!r}", lineno) from None


def _header(lines, magic):
    try:
        lineno, line = next(lines)
    except StopIteration:
        raise ParseError(f"empty input, expected '{magic} 1'") from None
    if line.split() != [magic, "1"]:
        raise ParseError(f"expected header '{magic} 1', got {line!r}", lineno)
    try:
        lineno, line = next(lines)
    except StopIteration:
        raise ParseError("missing 'n <qubits>' line") from None
    parts = line.split()
    if len(parts) != 2 or parts[0] != "n" or not parts[1].isdigit() or int(parts[1]) < 1:
        raise ParseError(f"expected 'n <qubits>', got {line!r}", lineno)
    n = int(parts[1])
    if n > 12:
        raise ParseError(f"qubit count {n} too large", lineno)
    return n


def parse_state(text, normalize=False):
    """Parse QST text into a :class:`StateVector`.

    Raises ``ParseError`` (with line number) on malformed input and
    ``NormError`` if the norm is off by more than 1e-6 and ``normalize`` is
    false.
    """
    lines = _content_lines(text)
    n = _header(lines, "QST")
    amps = []
    last = None
    for lineno, line in lines:
        last = lineno
        parts = line.split()
        if len(parts) != 2:
            raise ParseError(f"expected '<re> <im>', got {line!r}", lineno)
        if len(amps) == 2**n:
            raise ParseError(f"more than {2**n} amplitude lines", lineno)
        amps.append(complex(_float(parts[0], lineno), _float(parts[1], lineno)))
    if len(amps) != 2**n:
        raise ParseError(f"expected {2**n} amplitude lines, found {len(amps)}", last)
    return StateVector(amps, normalize=normalize)


def serialize_state(state):
    out = ["QST 1", f"n {state.n}"]
    for a in state.amplitudes:
        out.append(f"{_FMT.format(a.real)} {_FMT.format(a.imag)}")
    return "\n".join(out) + "\n"


def parse_density(text, normalize=False):
    """Parse QDM text into a :class:`DensityMatrix`.

    Validation errors from the matrix itself (``NotHermitian``, ``NotPSD``,
    ``TraceError``) propagate unchanged.
    """
    lines = _content_lines(text)
    n = _header(lines, "QDM")
    dim = 2**n
    rows = []
    last = None
    for lineno, line in lines:
        last = lineno
        if len(rows) == dim:
            raise ParseError(f"more than {dim} matrix rows", lineno)
        toks = line.split()
        if len(toks) != dim:
            raise ParseError(f"expected {dim} entries, found {len(toks)}", lineno)
        row = []
        for tok in toks:
            parts = tok.split(",")
            if len(parts) != 2:
                raise ParseError(f"expected '<re>,<im>', got {tok!r}", lineno)
            row.append(complex(_float(parts[0], lineno), _float(parts[1], lineno)))
        rows.append(row)
    if len(rows) != dim:
        raise ParseError(f"expected {dim} matrix rows, found {len(rows)}", last)
    return DensityMatrix(np.array(rows), normalize=normalize)


def serialize_density(rho):
    out = ["QDM 1", f"n {rho.n}"]
    for row in np.asarray(rho.matrix):
        out.append(" ".join(f"{_FMT.format(z.real)},{_FMT.format(z.imag)}" for z in row))
    return "\n".join(out) + "\n"


def read_state(path, normalize=False):
    return parse_state(Path(path).read_text(), normalize=normalize)


def write_state(path, state):
    Path(path).write_text(serialize_state(state))


def read_density(path, normalize=False):
    return parse_density(Path(path).read_text(), normalize=normalize)


def write_density(path, rho):
    Path(path).write_text(serialize_density(rho))
