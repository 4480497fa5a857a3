""" Benchmark harness: prices the cells of a golden table and compares them with the stored values. """

import statistics
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np
import pandas as pd

from ..io.report import write_bench_workbook
from ..io.tables import GOLDEN_MODELS, load_golden, resolve_table
from ..model.levy import build_model
from ..pricers.payoffs import PayoffSpec
from ..pricers.price import LaplaceScheme, PricingTask, price

# tolerances of the other inversion methods; sinh uses the tolerance stored with the golden table
METHOD_TOLERANCES = {'gwr': 5e-5, 'stehfest': 1e-3, 'flat': 1e-6}


@dataclass
class BenchReport:
    """
    Arguments:
        table_id: golden table.
        method: inversion method.
        cells: one row per golden cell.
        summary: one row per maturity plus an 'all' row.
        timings: one row per repetition.
    """

    table_id: str
    method: str
    cells: pd.DataFrame
    summary: pd.DataFrame
    timings: pd.DataFrame

    @property
    def passed(self) -> bool:
        return bool(self.cells['passed'].all())


def _golden_task(golden_df: pd.DataFrame, table_id: str, tol: float, family: str) -> PricingTask:
    points = golden_df[['a1', 'a2']].drop_duplicates().sort_values(['a2', 'a1'])
    payoffs = tuple(PayoffSpec(kind='cpdf', a1=a1, a2=a2) for a1, a2 in points.itertuples(index=False))
    maturities = tuple(sorted(golden_df['T'].unique()))
    model = build_model(**GOLDEN_MODELS[table_id])
    return PricingTask(model=model, payoffs=payoffs, maturities=maturities, tol=tol, family=family)


def _lookup(task: PricingTask, values: np.ndarray, golden_df: pd.DataFrame) -> np.ndarray:
    t_index = {T: i for i, T in enumerate(task.maturities)}
    p_index = {(payoff.a1, payoff.a2): j for j, payoff in enumerate(task.payoffs)}
    return np.array([values[t_index[row.T], p_index[(row.a1, row.a2)]] for row in golden_df.itertuples()])


def _summarize(cells_df: pd.DataFrame, ms_per_point: float) -> pd.DataFrame:
    rows = []
    groups = [(T, group) for T, group in cells_df.groupby('T')] + [('all', cells_df)]
    for T, group in groups:
        rows.append({'T': T, 'cells': len(group), 'max_abs_err': group['abs_err'].max(),
                     'median_abs_err': group['abs_err'].median(), 'passed': bool(group['passed'].all()),
                     'ms_per_point': ms_per_point})
    return pd.DataFrame(rows)


def run_bench(table_id: str, method: str = 'sinh', maturities: Optional[Sequence[float]] = None, repeats: int = 1,
              tol: float = 1e-12, gwr_m: int = 8, family: str = 'standard', max_workers: Optional[int] = None,
              file_xlsx: Optional[str] = None, verbose: bool = False) -> BenchReport:
    """
    Prices the cells of a golden table and reports the errors and the timings.

    Args:
        table_id: 'vg' or 'nig', or their numbers 1 and 3.
        method: inversion method.
        maturities: subset of maturities, by default all maturities of the table.
        repeats: number of timed runs; the median time per point is reported.
        tol: error tolerance of the integrals.
        gwr_m: order of the Gaver methods.
        family: deformation family.
        max_workers: threads evaluating the transforms.
        file_xlsx: if given, the report is also written to this Excel file.
        verbose: print progress.

    Returns:
        The report.
    """

    if repeats < 1:
        raise ValueError(f'Need at least one run, got repeats={repeats}.')

    table_id = resolve_table(table_id)
    golden_df = load_golden(table_id)
    if maturities is not None:
        golden_df = golden_df[golden_df['T'].isin(maturities)]
        if golden_df.empty:
            raise ValueError(f'No cells of table {table_id} at maturities {list(maturities)}.')
    golden_df = golden_df.reset_index(drop=True)

    task = _golden_task(golden_df, table_id, tol, family)
    scheme = LaplaceScheme(method=method, M=gwr_m, max_workers=max_workers)

    timings = []
    result = None
    for run in range(repeats):
        result = price(task, scheme, verbose=verbose)
        row = {'run': run, 'ms_per_point': result.ms_per_point}
        row.update({f'ms_{stage}': ms for stage, ms in result.timings.items()})
        timings.append(row)
    timings_df = pd.DataFrame(timings)

    cells_df = golden_df[['T', 'a1', 'a2', 'provenance']].copy()
    cells_df['golden'] = golden_df['value']
    cells_df['value'] = _lookup(task, result.values, golden_df)
    cells_df['err'] = cells_df['value'] - cells_df['golden']
    cells_df['abs_err'] = cells_df['err'].abs()
    cells_df['printed_err'] = golden_df['err_gwr' if method == 'gwr' else 'err_sinh']
    cells_df['tolerance'] = golden_df['tolerance'] if method == 'sinh' else METHOD_TOLERANCES[method]
    cells_df['passed'] = cells_df['abs_err'] <= cells_df['tolerance']

    ms_per_point = statistics.median(timings_df['ms_per_point'])
    summary_df = _summarize(cells_df, ms_per_point)

    if verbose:
        print(summary_df.to_string(index=False))

    if file_xlsx:
        write_bench_workbook(file_xlsx, summary_df, cells_df, timings_df)

    return BenchReport(table_id=table_id, method=method, cells=cells_df, summary=summary_df, timings=timings_df)


def compare_families(table_id: str, maturities: Optional[Sequence[float]] = None, tol: float = 1e-14,
                     families: Sequence[str] = ('I', 'II')) -> pd.DataFrame:
    """
    Prices the cells of a golden table with two deformation families, which move every contour, and reports the
    differences.

    Args:
        table_id: 'vg' or 'nig', or their numbers 1 and 3.
        maturities: subset of maturities.
        tol: error tolerance of the integrals.
        families: the two families.

    Returns:
        Data frame with the values of both families and their absolute difference.
    """

    table_id = resolve_table(table_id)
    golden_df = load_golden(table_id)
    if maturities is not None:
        golden_df = golden_df[golden_df['T'].isin(maturities)]
    golden_df = golden_df.reset_index(drop=True)

    compare_df = golden_df[['T', 'a1', 'a2']].copy()
    for family in families:
        task = _golden_task(golden_df, table_id, tol, family)
        compare_df[family] = _lookup(task, price(task).values, golden_df)
    compare_df['abs_diff'] = (compare_df[families[0]] - compare_df[families[1]]).abs()

    return compare_df
