from fractions import Fraction
from typing import Dict, Tuple, Union

ByteOrStr = Union[bytes, str]

Profile = Tuple[int, ...]
Diagram = Tuple[int, ...]
Block = Tuple[int, ...]
Word = Tuple[str, ...]
Monomial = Tuple[str, ...]

DiagramTable = Dict[Diagram, Fraction]
