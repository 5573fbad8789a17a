"""
Matrix text-format reading and writing

Text format: first line "n m", then n lines of m space-separated signed
decimal entries. UTF-8, LF or CRLF line endings. Real matrices use the same
layout with decimal floats. A headerless n x m grid is accepted when the
dimensions are supplied by the caller.
"""

from pathlib import Path
from typing import List, Optional, Tuple, Union
import logging

import numpy as np

from ..errors import MatrixParseError
from .matrices import RealMatrix, WitnessMatrix

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]


class MatrixIO:
    """
    Reader and writer for the witness-matrix text format.

    Examples:
        >>> matrix = MatrixIO.load_matrix("chsh.txt")
        >>> MatrixIO.save_matrix(matrix, "copy.txt")
    """

    @staticmethod
    def _read_lines(path: PathLike) -> List[str]:
        file_path = Path(path)
        if not file_path.exists():
            raise FileNotFoundError(f"Matrix file not found: {file_path}")
        with open(file_path, "r", encoding="utf-8", newline="") as handle:
            text = handle.read()
        lines = [line.strip() for line in text.splitlines()]
        return [line for line in lines if line]

    @staticmethod
    def _parse_header(line: str) -> Tuple[int, int]:
        fields = line.split()
        if len(fields) != 2:
            raise MatrixParseError(f"Header must be 'n m', got: {line!r}")
        try:
            n, m = int(fields[0]), int(fields[1])
        except ValueError as e:
            raise MatrixParseError(f"Header must hold two integers, got: {line!r}") from e
        if n < 1 or m < 1:
            raise MatrixParseError(f"Header dimensions must be positive, got {n} x {m}")
        return n, m

    @staticmethod
    def _split_grid(lines: List[str], shape: Optional[Tuple[int, int]]) -> Tuple[Tuple[int, int], List[List[str]]]:
        if shape is None:
            if not lines:
                raise MatrixParseError("Matrix file is empty")
            n, m = MatrixIO._parse_header(lines[0])
            body = lines[1:]
        else:
            n, m = shape
            body = lines
        if len(body) != n:
            raise MatrixParseError(f"Expected {n} rows, found {len(body)}")
        rows = []
        for index, line in enumerate(body):
            fields = line.split()
            if len(fields) != m:
                raise MatrixParseError(f"Row {index + 1} has {len(fields)} entries, expected {m}")
            rows.append(fields)
        return (n, m), rows

    @staticmethod
    def load_matrix(path: PathLike, shape: Optional[Tuple[int, int]] = None) -> WitnessMatrix:
        """
        Load an integer witness matrix.

        Args:
            path: Path to the matrix text file
            shape: (n, m) for a headerless grid; None when the file has a header

        Returns:
            Parsed WitnessMatrix

        Raises:
            FileNotFoundError: If the file does not exist
            MatrixParseError: If a line is malformed or counts disagree
            MatrixOverflowError: If an entry leaves the signed 64-bit range

        Examples:
            >>> MatrixIO.load_matrix("chsh.txt").tolist()
            [[1, 1], [1, -1]]
        """
        _, rows = MatrixIO._split_grid(MatrixIO._read_lines(path), shape)
        table = []
        for index, fields in enumerate(rows):
            try:
                table.append([int(field) for field in fields])
            except ValueError as e:
                raise MatrixParseError(f"Row {index + 1} holds a non-integer entry: {e}") from e
        matrix = WitnessMatrix.from_rows(table)
        logger.debug(f"Loaded {matrix!r} from {path}")
        return matrix

    @staticmethod
    def load_real_matrix(path: PathLike, shape: Optional[Tuple[int, int]] = None) -> RealMatrix:
        """
        Load a real matrix in the same layout with decimal floats.

        Raises:
            MatrixParseError: If a line is malformed, counts disagree or an entry is not finite
        """
        _, rows = MatrixIO._split_grid(MatrixIO._read_lines(path), shape)
        try:
            array = np.array([[float(field) for field in fields] for fields in rows], dtype=np.float64)
        except ValueError as e:
            raise MatrixParseError(f"Non-numeric entry: {e}") from e
        if not np.all(np.isfinite(array)):
            raise MatrixParseError("Real matrix entries must be finite")
        return RealMatrix(array)

    @staticmethod
    def format_matrix(matrix: Union[WitnessMatrix, RealMatrix]) -> str:
        """Render a matrix in the text format (header line included)."""
        lines = [f"{matrix.n} {matrix.m}"]
        if isinstance(matrix, WitnessMatrix):
            for row in matrix.tolist():
                lines.append(" ".join(str(value) for value in row))
        else:
            for row in matrix.tolist():
                lines.append(" ".join(repr(float(value)) for value in row))
        return "\n".join(lines) + "\n"

    @staticmethod
    def save_matrix(matrix: Union[WitnessMatrix, RealMatrix], path: PathLike) -> None:
        """
        Write a matrix in the text format; the output is re-loadable byte-compatibly.

        Args:
            matrix: Integer or real matrix
            path: Output file path
        """
        output_path = Path(path)
        with open(output_path, "w", encoding="utf-8", newline="\n") as handle:
            handle.write(MatrixIO.format_matrix(matrix))
        logger.info(f"Wrote {matrix!r} to {output_path}")


def load_matrix(path: PathLike, shape: Optional[Tuple[int, int]] = None) -> WitnessMatrix:
    """Module-level shortcut for MatrixIO.load_matrix."""
    return MatrixIO.load_matrix(path, shape)
