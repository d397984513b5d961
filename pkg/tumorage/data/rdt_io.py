import csv
import math

import numpy as np

from tumorage.utils.errors import EmptyInputError, IngestError

RDT_HEADER = 'rdt'


def read_rdt_csv(path):
    """Read observed RDT values from a CSV file.

    The file has a header line ``rdt`` followed by one real number per line,
    in doublings per year. Blank lines are skipped.

    Args:
        path (str): CSV file path.

    Returns:
        ndarray: The RDT values, in file order.
    """
    try:
        with open(path, 'r', newline='', encoding='utf-8') as f:
            rows = list(csv.reader(f))
    except (OSError, UnicodeDecodeError, csv.Error) as e:
        raise IngestError(f'Cannot read RDT file {path}: {e}') from e

    if not rows:
        raise EmptyInputError(f'RDT file {path} is empty.')
    header = [v.strip().lower() for v in rows[0]]
    if header != [RDT_HEADER]:
        raise IngestError(f'RDT file {path} must start with the header line "{RDT_HEADER}", got {rows[0]!r}.', [1])

    values, bad_lines = [], []
    for line_no, row in enumerate(rows[1:], start=2):
        cells = [v.strip() for v in row]
        if not cells or cells == ['']:
            continue
        try:
            if len(cells) != 1:
                raise ValueError
            value = float(cells[0])
        except ValueError:
            bad_lines.append(line_no)
            continue
        if not math.isfinite(value):
            bad_lines.append(line_no)
            continue
        values.append(value)

    if bad_lines:
        raise IngestError(f'Unparsable RDT rows in {path}', bad_lines)
    return np.asarray(values, dtype=np.float64)


def write_rdt_csv(path, samples):
    """Write RDT values in the format read by :func:`read_rdt_csv`."""
    with open(path, 'w', newline='') as f:
        f.write(f'{RDT_HEADER}\n')
        for v in np.asarray(samples, dtype=np.float64).ravel():
            f.write(f'{float(v)!r}\n')
