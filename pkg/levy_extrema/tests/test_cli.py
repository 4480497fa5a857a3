import io
import os
import unittest.mock

import numpy as np
import pandas as pd

from levy_extrema.cli.bench import BenchReport, run_bench, compare_families
from levy_extrema.cli.main import main, build_parser, load_config
from levy_extrema.oracle.brownian import bm_joint_cdf


class TestMain(unittest.TestCase):

    def setUp(self):
        this_dir, this_filename = os.path.split(__file__)
        self.test_folder = os.path.join(this_dir, 'test_files', 'test_cli')
        self.file_in = os.path.join(self.test_folder, 'brownian_cpdf.txt')

    def test_load_config_flags_override_file(self):
        args = build_parser().parse_args(['cpdf', '--config', self.file_in, '--T', '0.5', '2', '--mu', '0.1'])
        config = load_config(args)

        self.assertEqual((0.5, 2.0), config.task['T'])
        self.assertEqual(0.1, config.model['mu'])
        self.assertEqual(0.3, config.model['sigma'])
        self.assertEqual('cpdf', config.task['payoff'])

    @unittest.mock.patch('sys.stdout', new_callable=io.StringIO)
    def test_cpdf(self, mock_stdout):
        exit_code = main(['cpdf', '--config', self.file_in])
        data_df = pd.read_csv(io.StringIO(mock_stdout.getvalue()))

        self.assertEqual(0, exit_code)
        self.assertEqual(1, len(data_df))
        self.assertEqual('sinh', data_df['method'][0])
        self.assertAlmostEqual(bm_joint_cdf(0.3, 0.05, 1.0, -0.05, 0.1), data_df['value'][0], delta=1e-8)

    def test_cpdf_to_file(self):
        file_out = os.path.join(self.test_folder, 'brownian_cpdf.csv')
        exit_code = main(['cpdf', '--config', self.file_in, '--out', file_out, '--digits', '10'])

        self.assertEqual(0, exit_code)
        self.assertEqual(1, len(pd.read_csv(file_out)))

    @unittest.mock.patch('sys.stdout', new_callable=io.StringIO)
    def test_running_maximum_above_level(self, mock_stdout):
        exit_code = main(['cpdf', '--config', os.path.join(self.test_folder, 'above_level.txt')])
        data_df = pd.read_csv(io.StringIO(mock_stdout.getvalue()))

        self.assertEqual(0, exit_code)
        self.assertListEqual([0.0, 0.0], list(data_df['value']))

    @unittest.mock.patch('sys.stderr', new_callable=io.StringIO)
    def test_user_errors(self, mock_stderr):
        self.assertEqual(1, main(['cpdf', '--config', os.path.join(self.test_folder, 'bad_config.txt')]))
        self.assertEqual(1, main(['cpdf', '--config', os.path.join(self.test_folder, 'missing.txt')]))
        self.assertEqual(1, main(['cpdf', '--config', self.file_in, '--x1', '0.1']))
        self.assertTrue(mock_stderr.getvalue().startswith('error: Unable to parse: nu 0.2'))

    @unittest.mock.patch('sys.stderr', new_callable=io.StringIO)
    def test_numerical_failure(self, mock_stderr):
        with unittest.mock.patch('levy_extrema.cli.main.price', side_effect=FloatingPointError('overflow')):
            exit_code = main(['cpdf', '--config', self.file_in])

        self.assertEqual(2, exit_code)
        self.assertEqual('numerical failure (FloatingPointError): overflow\n', mock_stderr.getvalue())

    @unittest.mock.patch('sys.stdout', new_callable=io.StringIO)
    def test_whf(self, mock_stdout):
        exit_code = main(['whf', '--model', 'brownian', '--sigma', '0.3', '--q', '1', '5', '--xi', '-2', '0.5', '3'])
        data_df = pd.read_csv(io.StringIO(mock_stdout.getvalue()))

        self.assertEqual(0, exit_code)
        self.assertEqual(6, len(data_df))
        self.assertLess(data_df['identity_error'].max(), 1e-10)

    @unittest.mock.patch('sys.stderr', new_callable=io.StringIO)
    def test_whf_below_floor(self, mock_stderr):
        self.assertEqual(1, main(['whf', '--model', 'brownian', '--sigma', '0.3', '--q', '0.01', '--xi', '0.5']))

    @unittest.mock.patch('sys.stdout', new_callable=io.StringIO)
    def test_brownian_oracle(self, mock_stdout):
        exit_code = main(['oracle', '--oracle', 'brownian', '--config', self.file_in])
        data_df = pd.read_csv(io.StringIO(mock_stdout.getvalue()))

        self.assertEqual(0, exit_code)
        self.assertEqual('bm', data_df['method'][0])
        self.assertAlmostEqual(bm_joint_cdf(0.3, 0.05, 1.0, -0.05, 0.1), data_df['value'][0], places=14)

    @unittest.mock.patch('sys.stderr', new_callable=io.StringIO)
    def test_flat_oracle_needs_q(self, mock_stderr):
        self.assertEqual(1, main(['oracle', '--oracle', 'flat', '--config', self.file_in]))
        self.assertEqual('error: The flat oracle needs --q.\n', mock_stderr.getvalue())

    @unittest.mock.patch('sys.stdout', new_callable=io.StringIO)
    def test_bench(self, mock_stdout):
        file_xlsx = os.path.join(self.test_folder, 'bench_vg.xlsx')
        exit_code = main(['bench', '--table', 'vg', '--repeats', '1', '--xlsx', file_xlsx])
        data_df = pd.read_csv(io.StringIO(mock_stdout.getvalue()))

        self.assertEqual(0, exit_code)
        self.assertEqual(25, len(data_df))
        self.assertTrue(data_df['passed'].all())
        self.assertTrue(os.path.isfile(file_xlsx))

    @unittest.mock.patch('sys.stdout', new_callable=io.StringIO)
    def test_bench_by_table_number(self, mock_stdout):
        exit_code = main(['bench', '--table', '1', '--repeats', '1'])
        data_df = pd.read_csv(io.StringIO(mock_stdout.getvalue()))

        self.assertEqual(0, exit_code)
        self.assertEqual(25, len(data_df))
        self.assertTrue(data_df['provenance'].str.startswith('Table 1, row a2=').all())

    @unittest.mock.patch('sys.stderr', new_callable=io.StringIO)
    @unittest.mock.patch('sys.stdout', new_callable=io.StringIO)
    def test_bench_one_maturity(self, mock_stdout, mock_stderr):
        exit_code = main(['bench', '--table', '3', '--T', '15', '--repeats', '1'])
        data_df = pd.read_csv(io.StringIO(mock_stdout.getvalue()))

        self.assertEqual(25, len(data_df))
        self.assertTrue(np.all(data_df['T'] == 15))
        self.assertEqual(0 if data_df['passed'].all() else 1, exit_code)

    @unittest.mock.patch('sys.stderr', new_callable=io.StringIO)
    @unittest.mock.patch('sys.stdout', new_callable=io.StringIO)
    def test_bench_failed_cells(self, mock_stdout, mock_stderr):
        cells_df = pd.DataFrame({'T': [0.25, 0.25], 'a1': [-0.05, 0.0], 'a2': [0.1, 0.1], 'abs_err': [1e-12, 1e-6],
                                 'tolerance': [1e-10, 1e-10], 'passed': [True, False]})
        report = BenchReport(table_id='vg', method='sinh', cells=cells_df, summary=pd.DataFrame(),
                             timings=pd.DataFrame())

        with unittest.mock.patch('levy_extrema.cli.main.run_bench', return_value=report):
            exit_code = main(['bench', '--table', 'vg', '--repeats', '1'])

        self.assertEqual(1, exit_code)
        self.assertEqual('1 cells exceed the tolerance.\n', mock_stderr.getvalue())
        self.assertEqual(2, len(pd.read_csv(io.StringIO(mock_stdout.getvalue()))))


class TestBench(unittest.TestCase):

    def test_run_bench_gwr(self):
        report = run_bench('nig', method='gwr', maturities=[1.0])

        self.assertEqual('gwr', report.method)
        self.assertTrue(report.passed)
        self.assertTrue(np.all(report.cells['tolerance'] == 5e-5))
        self.assertListEqual([1.0, 'all'], list(report.summary['T']))
        self.assertEqual(1, len(report.timings))

    def test_bad_bench(self):
        self.assertRaises(ValueError, run_bench, 'vg', repeats=0)
        self.assertRaises(ValueError, run_bench, 'vg', maturities=[3.0])
        self.assertRaises(KeyError, run_bench, 'cgmy')

    def test_compare_families(self):
        compare_df = compare_families('vg')

        self.assertEqual(25, len(compare_df))
        self.assertLessEqual(compare_df['abs_diff'].max(), 1e-13)
