import csv
import json
from collections import OrderedDict
from dataclasses import dataclass, replace

from tumorage.inversion.crossing import BUCKET_FACTOR
from tumorage.report.pipeline import age_table_pipeline
from tumorage.utils import get_root_logger
from tumorage.utils.errors import ConfigError
from tumorage.utils.options import check_rho


@dataclass
class SensitivityReport():
    """Median and IQR width per (rho, diameter), with deltas against rho = 0.

    ``medians[rho][i]`` and ``iqr_widths[rho][i]`` belong to ``diameters[i]``;
    entries are None where the table row is missing.
    """

    rhos: list
    diameters: list
    medians: dict
    iqr_widths: dict
    n_crossings: dict

    def median_delta(self, rho):
        return _deltas(self.medians[rho], self.medians[0.0])

    def iqr_width_delta(self, rho):
        return _deltas(self.iqr_widths[rho], self.iqr_widths[0.0])

    def rows(self):
        """One row per diameter and rho, diameters outermost."""
        out = []
        for i, diameter in enumerate(self.diameters):
            for rho in self.rhos:
                out.append(
                    OrderedDict(
                        diameter_cm=diameter,
                        rho=rho,
                        median=self.medians[rho][i],
                        iqr_width=self.iqr_widths[rho][i],
                        median_delta=self.median_delta(rho)[i],
                        iqr_width_delta=self.iqr_width_delta(rho)[i],
                        n_crossings=self.n_crossings[rho][i]))
        return out

    def write_csv(self, path):
        columns = ['diameter_cm', 'rho', 'median', 'iqr_width', 'median_delta', 'iqr_width_delta', 'n_crossings']
        with open(path, 'w', newline='') as f:
            writer = csv.writer(f, lineterminator='\n')
            writer.writerow(columns)
            for row in self.rows():
                cells = [f'{row["diameter_cm"]:g}', f'{row["rho"]:g}']
                cells += ['' if row[name] is None else f'{row[name]:.6f}' for name in columns[2:-1]]
                writer.writerow([*cells, row['n_crossings']])

    def write_json(self, path, config=None):
        out = OrderedDict(rhos=self.rhos, diameters=self.diameters, rows=self.rows())
        if config is not None:
            out['config'] = config
        with open(path, 'w') as f:
            json.dump(out, f, indent=2)
            f.write('\n')


def _deltas(values, baseline):
    return [None if v is None or b is None else v - b for v, b in zip(values, baseline)]


def sensitivity_sweep(model,
                      config,
                      rhos,
                      grid,
                      crossings='all',
                      num_threads=1,
                      progress=False,
                      reference_diameters=None,
                      bucket_factor=BUCKET_FACTOR):
    """Rebuild the age table for several serial correlations.

    Every run uses the same seed, so the rho = 0 run of a sweep equals the
    plain age table of ``config``. A rho = 0 baseline is added when missing.

    Args:
        model (RdtMixture): RDT distribution.
        config (SimulationConfig): Simulation settings; its ``rho`` is replaced.
        rhos (sequence[float]): Correlations in [0, 1).
        grid (DiameterGrid): Threshold diameters.
        crossings (str): Crossing convention. Default: 'all'.
        num_threads (int): Worker threads. Default: 1.
        progress (bool): Show progress bars. Default: False.
        reference_diameters (sequence[float] | None): Report only these grid
            diameters; others are skipped with a warning. Default: all rows.
        bucket_factor (float): Bucket resolution of the occupancy convention.

    Returns:
        SensitivityReport: The sweep results in rho order.
    """
    logger = get_root_logger()
    rhos = sorted({check_rho(r) for r in rhos} | {0.0})
    if reference_diameters is None:
        keep = list(range(len(grid)))
    else:
        wanted = [float(d) for d in reference_diameters]
        off_grid = [d for d in wanted if d not in grid.thresholds]
        if off_grid:
            logger.warning(f'Reference diameters {off_grid} are not on the grid and are skipped.')
        keep = [i for i, d in enumerate(grid.thresholds) if d in wanted]
        if not keep:
            raise ConfigError(f'No reference diameter lies on the grid {list(grid.thresholds)}.')

    medians, iqr_widths, n_crossings = {}, {}, {}
    for rho in rhos:
        logger.info(f'Sensitivity run with rho={rho:g}.')
        table = age_table_pipeline(
            model,
            replace(config, rho=rho),
            grid,
            crossings=crossings,
            num_threads=num_threads,
            progress=progress,
            bucket_factor=bucket_factor)
        medians[rho], iqr_widths[rho], n_crossings[rho] = [], [], []
        for row in (table.rows[i] for i in keep):
            values = None if row.missing else dict(zip(table.columns, row.values))
            medians[rho].append(None if values is None else values['p50'])
            iqr_widths[rho].append(None if values is None else values['p75'] - values['p25'])
            n_crossings[rho].append(row.n_crossings)
    return SensitivityReport(
        rhos=rhos,
        diameters=[grid.thresholds[i] for i in keep],
        medians=medians,
        iqr_widths=iqr_widths,
        n_crossings=n_crossings)
