import csv
from collections import OrderedDict

from tumorage.report.query import row_percentiles
from tumorage.utils import get_root_logger

# Published percentiles of age (years since the 0.01 mL origin) by diameter (cm),
# columns 5th, 25th, 50th, 75th and 95th.
PUBLISHED_AGE_TABLE = OrderedDict([
    (0.3, (1.3, 2.0, 2.7, 4.0, 7.4)),
    (0.4, (2.0, 3.4, 4.7, 6.7, 10.1)),
    (0.5, (2.7, 4.7, 6.7, 8.7, 12.8)),
    (0.7, (4.0, 6.0, 8.1, 10.7, 16.1)),
    (1.0, (4.7, 7.4, 10.1, 12.8, 17.5)),
    (1.3, (6.0, 9.4, 11.4, 14.8, 20.8)),
    (1.8, (6.7, 10.7, 13.4, 16.8, 22.2)),
    (2.5, (8.1, 12.1, 15.4, 18.8, 24.8)),
    (3.3, (10.1, 14.1, 17.5, 21.5, 26.8)),
    (4.5, (10.7, 15.4, 19.5, 23.5, 29.5)),
    (6.0, (12.1, 16.8, 20.8, 25.5, 32.9)),
    (8.2, (13.4, 18.8, 22.8, 27.5, 34.2)),
    (11.0, (15.4, 20.8, 24.8, 29.5, 36.2)),
    (14.9, (16.1, 22.2, 26.8, 31.5, 38.9)),
])

_COLUMNS = ('p5', 'p25', 'p50', 'p75', 'p95')


def compare_with_published(table):
    """Differences between a computed age table and the published one.

    Only diameters present in both tables are compared; missing computed rows
    are skipped.

    Returns:
        list[OrderedDict]: Per diameter, computed and published percentiles and
            their differences ``delta_p5`` ... ``delta_p95`` (computed minus
            published).
    """
    rows = []
    for row in table.rows:
        published = PUBLISHED_AGE_TABLE.get(row.diameter)
        if published is None or row.missing:
            continue
        computed = row_percentiles(table, row)
        out = OrderedDict(diameter_cm=row.diameter)
        for name, value in zip(_COLUMNS, computed):
            out[name] = value
        for name, value in zip(_COLUMNS, published):
            out[f'published_{name}'] = value
        for name, a, b in zip(_COLUMNS, computed, published):
            out[f'delta_{name}'] = a - b
        rows.append(out)

    if rows:
        worst = max(rows, key=lambda r: max(abs(r[f'delta_{name}']) for name in _COLUMNS))
        deviation = max(abs(worst[f'delta_{name}']) for name in _COLUMNS)
        get_root_logger().info(f'Largest deviation from the published table: {deviation:.2f} years '
                               f"at {worst['diameter_cm']:g} cm.")
    return rows


def write_comparison_csv(path, rows):
    with open(path, 'w', newline='') as f:
        writer = csv.writer(f, lineterminator='\n')
        if not rows:
            writer.writerow(['diameter_cm'])
            return
        writer.writerow(list(rows[0].keys()))
        for row in rows:
            writer.writerow([f"{row['diameter_cm']:g}"] + [f'{v:.6f}' for v in list(row.values())[1:]])
