"""CoveringLoader - reads congruence sets and moduli sets from text and files."""

from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple, Union

import yaml

from .errors import CoveringLoadError, DuplicateModulusError, ModulusError
from .models import CongruenceSet, ModuliSet

# "-1 12" is a line; "- {x: 11, m: 12}" is a YAML list item
STRUCTURED_PREFIXES = ("{", "[", "- ", "congruences:")


def _strip_comment(line: str) -> str:
    return line.split("#", 1)[0].strip()


def _parse_int(token: str, line: int) -> int:
    try:
        return int(token, 10)
    except ValueError:
        raise CoveringLoadError(f"'{token}' is not a decimal integer", line)


class CoveringLoader:
    """
    Loads congruence sets.

    Two formats are accepted:
    - line format: one ``x m`` pair per line, ``#`` starts a comment
    - structured format: a YAML or JSON list of ``{x: ..., m: ...}`` objects,
      optionally under a top-level ``congruences`` key

    Residues are reduced modulo m and the result is sorted by modulus.

    Example:
        loader = CoveringLoader()
        covering = loader.load_from_file("coverings/erdos12.txt")
    """

    def load_from_file(self, file_path: Union[str, Path]) -> CongruenceSet:
        """
        Load a congruence set from a file in either format.

        Raises:
            CoveringLoadError: If the file cannot be read or parsed
        """
        return self.load_from_string(_read_text(file_path))

    def load_from_string(self, content: str) -> CongruenceSet:
        """
        Load a congruence set, picking the format from the first content line.

        Raises:
            CoveringLoadError: On malformed input, with its line number
            DuplicateModulusError: If a modulus repeats
            ModulusError: If a modulus is below 2
        """
        for raw in content.splitlines():
            head = _strip_comment(raw)
            if head:
                if head.startswith(STRUCTURED_PREFIXES):
                    return self._load_structured(content)
                break
        return self._load_lines(content)

    def load_from_data(self, data: Any) -> CongruenceSet:
        """
        Load from parsed YAML/JSON data.

        Raises:
            CoveringLoadError: If the data has the wrong shape
        """
        if isinstance(data, dict):
            if "congruences" not in data:
                raise CoveringLoadError("mapping must have a 'congruences' key")
            data = data["congruences"]
        if data is None:
            data = []
        if not isinstance(data, list):
            raise CoveringLoadError("congruences must be a list")

        pairs: List[Tuple[int, int]] = []
        for i, item in enumerate(data):
            if not isinstance(item, dict) or "x" not in item or "m" not in item:
                raise CoveringLoadError(
                    f"entry {i} must be an object with 'x' and 'm'"
                )
            x, m = item["x"], item["m"]
            if not isinstance(x, int) or not isinstance(m, int) or isinstance(m, bool):
                raise CoveringLoadError(f"entry {i}: x and m must be integers")
            pairs.append((x, m))
        unnumbered: List[Optional[int]] = [None] * len(pairs)
        return _build(pairs, unnumbered)

    def _load_structured(self, content: str) -> CongruenceSet:
        try:
            data = yaml.safe_load(content)
        except yaml.YAMLError as e:
            raise CoveringLoadError(f"Failed to parse structured covering: {e}")
        return self.load_from_data(data)

    def _load_lines(self, content: str) -> CongruenceSet:
        pairs: List[Tuple[int, int]] = []
        lines: List[Optional[int]] = []
        for number, raw in enumerate(content.splitlines(), start=1):
            body = _strip_comment(raw)
            if not body:
                continue
            tokens = body.split()
            if len(tokens) != 2:
                raise CoveringLoadError(
                    f"expected 'x m', got {len(tokens)} field(s)", number
                )
            pairs.append((_parse_int(tokens[0], number), _parse_int(tokens[1], number)))
            lines.append(number)
        return _build(pairs, lines)


def _build(
    pairs: List[Tuple[int, int]], lines: List[Optional[int]]
) -> CongruenceSet:
    seen: Dict[int, Optional[int]] = {}
    for (_, m), line in zip(pairs, lines):
        if m < 2:
            raise ModulusError(m, f"line {line}" if line is not None else None)
        if m in seen:
            raise DuplicateModulusError(m, line)
        seen[m] = line
    return CongruenceSet.of(pairs)


def _read_text(file_path: Union[str, Path]) -> str:
    file_path = Path(file_path)

    if not file_path.exists():
        raise CoveringLoadError(f"File not found: {file_path}")

    if not file_path.is_file():
        raise CoveringLoadError(f"Path is not a file: {file_path}")

    try:
        return file_path.read_text(encoding="utf-8")
    except Exception as e:
        raise CoveringLoadError(f"Failed to read file {file_path}: {e}")


def parse_covering(text: str) -> CongruenceSet:
    """Parse a congruence set from line or structured text."""
    return CoveringLoader().load_from_string(text)


def serialize_covering(C: CongruenceSet) -> str:
    """Canonical line format: ``x m`` per line, ascending modulus."""
    return "".join(f"{c.residue} {c.modulus}\n" for c in C)


def load_covering_file(file_path: Union[str, Path]) -> CongruenceSet:
    return CoveringLoader().load_from_file(file_path)


def parse_moduli(text: str) -> ModuliSet:
    """
    Parse a moduli set: one integer per line, ``#`` comments allowed.

    Raises:
        CoveringLoadError: On a malformed line
        DuplicateModulusError: If a modulus repeats
        ModulusError: If a modulus is below 2
    """
    seen: Dict[int, int] = {}
    for number, raw in enumerate(text.splitlines(), start=1):
        body = _strip_comment(raw)
        if not body:
            continue
        tokens = body.split()
        if len(tokens) != 1:
            raise CoveringLoadError(f"expected one modulus, got {len(tokens)}", number)
        m = _parse_int(tokens[0], number)
        if m < 2:
            raise ModulusError(m, f"line {number}")
        if m in seen:
            raise DuplicateModulusError(m, number)
        seen[m] = number
    return ModuliSet.of(seen)


def load_moduli_file(file_path: Union[str, Path]) -> ModuliSet:
    return parse_moduli(_read_text(file_path))
