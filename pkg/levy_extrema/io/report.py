""" Excel workbook with the results of a benchmark run. """

import pandas as pd


def _add_summary_sheet(writer, summary_df: pd.DataFrame):
    summary_df.to_excel(writer, sheet_name='summary', index=False)
    return writer


def _add_cells_sheet(writer, cells_df: pd.DataFrame):
    cells_df.to_excel(writer, sheet_name='cells', index=False)
    return writer


def _add_timings_sheet(writer, timings_df: pd.DataFrame):
    timings_df.to_excel(writer, sheet_name='timings', index=False)
    return writer


def write_bench_workbook(file_out: str, summary_df: pd.DataFrame, cells_df: pd.DataFrame,
                         timings_df: pd.DataFrame):
    """
    Writes the benchmark report to an Excel file with the sheets summary, cells and timings.

    Args:
        file_out: path to the output Excel file.
        summary_df: one row per maturity with the maximal and median errors and the pass flag.
        cells_df: one row per golden cell with the computed value and its error.
        timings_df: one row per repetition with the time per stage.

    Returns:
        None
    """

    with pd.ExcelWriter(file_out, engine='xlsxwriter') as writer:
        _add_summary_sheet(writer, summary_df)
        _add_cells_sheet(writer, cells_df)
        _add_timings_sheet(writer, timings_df)
