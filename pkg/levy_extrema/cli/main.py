""" Command-line front end: levy-extrema <subcommand> [--config FILE] [flags]. """

import argparse
import sys
import time
from typing import List, Optional

import numpy as np
import pandas as pd

from .bench import run_bench
from ..contours.select import admissibility_floor, default_window
from ..io.config import RunConfig, import_config_from_plaintext
from ..io.tables import RESULT_COLUMNS, result_to_frame, write_results
from ..model.levy import BrownianMotion
from ..oracle.brownian import bm_joint_cdf
from ..oracle.flat import flat_contour_cpdf_laplace
from ..oracle.monte_carlo import mc_joint_cdf
from ..pricers.price import price, transform_values
from ..whf.factors import ContourPair, phi_minus, phi_plus

PRICING_COMMANDS = {'cpdf': 'cpdf', 'no-touch': 'no_touch', 'barrier': 'barrier', 'exchange': 'exchange'}

# flag -> (section, key) of the run configuration
OVERRIDES = {
    'model': ('model', 'kind'), 'nu': ('model', 'nu'), 'lambda_plus': ('model', 'lambda_plus'),
    'lambda_minus': ('model', 'lambda_minus'), 'm2': ('model', 'm2'), 'c': ('model', 'c'),
    'sigma': ('model', 'sigma'), 'mu': ('model', 'mu'),
    'T': ('task', 'T'), 'a1': ('task', 'a1'), 'a2': ('task', 'a2'), 'h': ('task', 'h'), 'beta': ('task', 'beta'),
    'x1': ('task', 'x1'), 'x2': ('task', 'x2'), 'terminal': ('task', 'terminal'), 'k': ('task', 'k'),
    'strike': ('task', 'strike'),
    'tol': ('numeric', 'tol'), 'method': ('numeric', 'method'), 'family': ('numeric', 'family'),
    'gwr_m': ('numeric', 'gwr_m'), 'shift_a': ('numeric', 'shift_a'), 'seed': ('numeric', 'seed'),
    'omega_plus': ('numeric', 'omega_plus'), 'omega_minus': ('numeric', 'omega_minus'),
    'omega_ell': ('numeric', 'omega_ell'), 'n_xi': ('numeric', 'n_xi'), 'n_ell': ('numeric', 'n_ell'),
    'max_workers': ('numeric', 'max_workers'), 'n_paths': ('numeric', 'n_paths'),
    'n_steps': ('numeric', 'n_steps'), 'big_n': ('numeric', 'big_n'),
    'out': ('output', 'csv'), 'digits': ('output', 'digits'), 'xlsx': ('output', 'xlsx'),
}

USER_ERRORS = (ValueError, KeyError, SyntaxError, OSError)
NUMERICAL_ERRORS = (FloatingPointError, ZeroDivisionError, ArithmeticError, RuntimeError)


def _add_common_flags(parser: argparse.ArgumentParser):
    parser.add_argument('--config', help='plain text run configuration')

    model = parser.add_argument_group('model')
    model.add_argument('--model', choices=['kobol', 'kobol-general', 'brownian'])
    model.add_argument('--nu', type=float)
    model.add_argument('--lambda-plus', dest='lambda_plus', type=float)
    model.add_argument('--lambda-minus', dest='lambda_minus', type=float)
    model.add_argument('--m2', type=float)
    model.add_argument('--c', type=float)
    model.add_argument('--sigma', type=float)
    model.add_argument('--mu', type=float)

    task = parser.add_argument_group('task')
    task.add_argument('--T', nargs='+', type=float)
    task.add_argument('--a1', nargs='+', type=float)
    task.add_argument('--a2', nargs='+', type=float)
    task.add_argument('--h', nargs='+', type=float)
    task.add_argument('--beta', nargs='+', type=float)
    task.add_argument('--x1', type=float)
    task.add_argument('--x2', type=float)
    task.add_argument('--terminal', choices=['digital', 'vanilla', 'constant'])
    task.add_argument('--k', type=float, help='log-strike of the digital put')
    task.add_argument('--strike', type=float, help='strike of the vanilla put')

    numeric = parser.add_argument_group('numeric')
    numeric.add_argument('--tol', type=float)
    numeric.add_argument('--method', choices=['sinh', 'gwr', 'stehfest', 'flat'])
    numeric.add_argument('--family', choices=['standard', 'I', 'II'])
    numeric.add_argument('--gwr-m', dest='gwr_m', type=int)
    numeric.add_argument('--shift-a', dest='shift_a', type=float)
    numeric.add_argument('--seed', type=int)
    numeric.add_argument('--omega-plus', dest='omega_plus', type=float)
    numeric.add_argument('--omega-minus', dest='omega_minus', type=float)
    numeric.add_argument('--omega-ell', dest='omega_ell', type=float)
    numeric.add_argument('--n-xi', dest='n_xi', type=int)
    numeric.add_argument('--n-ell', dest='n_ell', type=int)
    numeric.add_argument('--max-workers', dest='max_workers', type=int)

    output = parser.add_argument_group('output')
    output.add_argument('--out', help='csv file, stdout by default')
    output.add_argument('--digits', type=int)
    output.add_argument('--verbose', action='store_true')


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog='levy-extrema',
                                     description='Joint distribution of a Levy process and its running maximum, '
                                                 'barrier and exchange options by Wiener-Hopf factorization.')
    subparsers = parser.add_subparsers(dest='command', required=True)

    for command in PRICING_COMMANDS:
        _add_common_flags(subparsers.add_parser(command, help=f'price {command} points'))

    whf = subparsers.add_parser('whf', help='Wiener-Hopf factors at real points')
    _add_common_flags(whf)
    whf.add_argument('--q', nargs='+', type=float, required=True)
    whf.add_argument('--xi', nargs='+', type=float, required=True)

    oracle = subparsers.add_parser('oracle', help='independent checks of the joint cpdf')
    _add_common_flags(oracle)
    oracle.add_argument('--oracle', choices=['brownian', 'mc', 'flat'], required=True)
    oracle.add_argument('--n-paths', dest='n_paths', type=int)
    oracle.add_argument('--n-steps', dest='n_steps', type=int)
    oracle.add_argument('--big-n', dest='big_n', type=int)
    oracle.add_argument('--q', nargs='+', type=float, help='spectral parameters of the flat oracle')

    bench = subparsers.add_parser('bench', help='compare with a golden table')
    _add_common_flags(bench)
    bench.add_argument('--table', choices=['1', '3', 'vg', 'nig'], required=True,
                       help='golden table by number (1, 3) or name (vg, nig)')
    bench.add_argument('--repeats', type=int, default=10)
    bench.add_argument('--xlsx', help='also write the report to this Excel file')

    return parser


def load_config(args: argparse.Namespace) -> RunConfig:
    """ The configuration file (if any) with every flag given on the command line applied on top. """
    config = import_config_from_plaintext(args.config) if args.config else RunConfig()
    for flag, (section, key) in OVERRIDES.items():
        value = getattr(args, flag, None)
        if value is not None:
            config.set(section, key, tuple(value) if isinstance(value, list) else value)
    if args.command in PRICING_COMMANDS:
        config.set('task', 'payoff', PRICING_COMMANDS[args.command])
    return config


def _emit(data_df: pd.DataFrame, config: RunConfig):
    file_out = config.output.get('csv')
    digits = config.output['digits']
    if file_out:
        write_results(data_df, file_out, digits=digits)
    else:
        data_df.to_csv(sys.stdout, index=False, float_format=f'%.{digits}g')


def _run_pricing(config: RunConfig, verbose: bool) -> pd.DataFrame:
    result = price(config.pricing_task(), config.laplace_scheme(), verbose=verbose)
    return result_to_frame(result)


def _run_whf(config: RunConfig, q_values: List[float], xi_values: List[float]) -> pd.DataFrame:
    model = config.build_model()
    tol = config.numeric['tol']
    profile = model.profile
    windows = (default_window(profile, 'plus'), default_window(profile, 'minus'))
    floor = admissibility_floor(model, windows)
    if min(q_values) <= floor:
        raise ValueError(f'q must exceed the admissibility floor {floor} of the contours, got {min(q_values)}.')

    pair = ContourPair.from_model(model, tol, min(q_values), family=config.numeric['family'])
    xi = np.asarray(xi_values, dtype=complex)
    psi_xi = model.psi(xi)

    rows = []
    for q in q_values:
        plus = phi_plus(model, q, xi, pair.minus, psi_values=pair.psi_minus)
        minus = phi_minus(model, q, xi, pair.plus, psi_values=pair.psi_plus)
        identity = np.abs(plus * minus * (q + psi_xi) / q - 1)
        for j, point in enumerate(xi_values):
            rows.append([q, point, plus[j].real, plus[j].imag, minus[j].real, minus[j].imag, identity[j]])

    return pd.DataFrame(rows, columns=['q', 'xi', 'phi_plus_re', 'phi_plus_im', 'phi_minus_re', 'phi_minus_im',
                                       'identity_error'])


def _run_oracle(config: RunConfig, oracle: str, q_values: Optional[List[float]]) -> pd.DataFrame:
    task = config.task
    numeric = config.numeric
    model = config.build_model()
    x1, x2 = task['x1'], task['x2']
    points = [(payoff.a1, payoff.a2) for payoff in config.payoffs()]

    if oracle == 'flat':
        if not q_values:
            raise ValueError('The flat oracle needs --q.')
        pricing_task = config.pricing_task()
        deformed = transform_values(pricing_task, q_values, max_workers=numeric.get('max_workers'))
        rows = []
        for i, q in enumerate(q_values):
            for j, (a1, a2) in enumerate(points):
                flat = flat_contour_cpdf_laplace(model, q, x1, x2, a1, a2, big_N=numeric.get('big_n', 4000))
                rows.append([q, a1, a2, x1, x2, flat.real, deformed[i, j].real, abs(flat - deformed[i, j])])
        return pd.DataFrame(rows, columns=['q', 'a1', 'a2', 'x1', 'x2', 'flat', 'deformed', 'abs_diff'])

    rows = []
    for T in task['T']:
        for a1, a2 in points:
            start = time.perf_counter()
            if oracle == 'brownian':
                if not isinstance(model, BrownianMotion):
                    raise ValueError('The brownian oracle needs --model brownian.')
                value, error, method = bm_joint_cdf(model.sigma, model.mu, T, a1, a2, x1=x1, x2=x2), 1e-15, 'bm'
            else:
                report = mc_joint_cdf(model, T, a1, a2, n_paths=numeric.get('n_paths', 10 ** 5),
                                      n_steps=numeric.get('n_steps', 1000), seed=numeric['seed'], x1=x1, x2=x2,
                                      max_workers=numeric.get('max_workers'))
                value, error, method = report.value, report.est_error, report.method
            ms = 1e3 * (time.perf_counter() - start)
            rows.append([T, a1, a2, x1, x2, value, method, error, ms])

    return pd.DataFrame(rows, columns=RESULT_COLUMNS)


def run(args: argparse.Namespace) -> int:
    config = load_config(args)

    if args.command in PRICING_COMMANDS:
        data_df = _run_pricing(config, args.verbose)
    elif args.command == 'whf':
        data_df = _run_whf(config, args.q, args.xi)
    elif args.command == 'oracle':
        data_df = _run_oracle(config, args.oracle, args.q)
    else:
        report = run_bench(args.table, method=config.numeric['method'], maturities=config.task.get('T'),
                           repeats=args.repeats, tol=config.numeric['tol'], gwr_m=config.numeric['gwr_m'],
                           family=config.numeric['family'], max_workers=config.numeric.get('max_workers'),
                           file_xlsx=args.xlsx, verbose=args.verbose)
        _emit(report.cells, config)
        if not report.passed:
            print(f'{int((~report.cells["passed"]).sum())} cells exceed the tolerance.', file=sys.stderr)
            return 1
        return 0

    _emit(data_df, config)
    return 0


def main(argv: Optional[List[str]] = None) -> int:
    """
    Entry point. Returns 0 on success, 1 on user errors (bad configuration or arguments) or on golden cells out of
    tolerance in bench, and 2 on numerical failures.
    """

    args = build_parser().parse_args(argv)
    try:
        return run(args)
    except USER_ERRORS as exc:
        print(f'error: {exc}', file=sys.stderr)
        return 1
    except NUMERICAL_ERRORS as exc:
        print(f'numerical failure ({type(exc).__name__}): {exc}', file=sys.stderr)
        return 2


if __name__ == '__main__':
    sys.exit(main())
