import csv
import io
import logging
from collections import namedtuple
from typing import List, TextIO

from hofree.estimate import Estimate, as_float

logger = logging.getLogger(__name__)

COLUMNS = ('quantity', 'N', 'S', 'estimate', 'std_err', 'prediction', 'provenance', 'z')

FluctuationRow = namedtuple('FluctuationRow', COLUMNS)


class FluctuationReport:
    """Estimates against predictions, one row per quantity."""

    def __init__(self, tolerance: float = 3.0):
        self.tolerance = tolerance
        self.rows: List[FluctuationRow] = []

    def add(self, quantity: str, N: int, S: int, estimate: Estimate, prediction, provenance: str) -> FluctuationRow:
        prediction = as_float(prediction.value if isinstance(prediction, Estimate) else prediction)
        row = FluctuationRow(quantity, N, S, estimate.value, estimate.std_err, prediction, provenance,
                             estimate.z_score(prediction))
        if not abs(row.z) <= self.tolerance:
            logger.warning('%s at N=%d: estimate %.6g vs prediction %.6g (z=%.2f)',
                           quantity, N, row.estimate, prediction, row.z)
        self.rows.append(row)
        return row

    def extend(self, other: 'FluctuationReport'):
        self.rows.extend(other.rows)

    def failures(self) -> List[FluctuationRow]:
        return [row for row in self.rows if not abs(row.z) <= self.tolerance]

    @property
    def passed(self) -> bool:
        return not self.failures()

    @property
    def max_abs_z(self) -> float:
        return max((abs(row.z) for row in self.rows), default=0.0)

    def write_csv(self, stream: TextIO):
        writer = csv.writer(stream, lineterminator='\n')
        writer.writerow(COLUMNS)
        for row in self.rows:
            writer.writerow([row.quantity, row.N, row.S, repr(row.estimate), repr(row.std_err),
                             repr(row.prediction), row.provenance,
                             repr(row.z)])

    def to_csv(self) -> str:
        buffer = io.StringIO()
        self.write_csv(buffer)
        return buffer.getvalue()

    def __len__(self):
        return len(self.rows)

    def __repr__(self):
        return f'{type(self).__name__}<{len(self.rows)} rows, max |z|={self.max_abs_z:.2f}>'
