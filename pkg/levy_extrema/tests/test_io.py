import os
import unittest

import numpy as np
import pandas as pd

from levy_extrema.io.config import RunConfig, ConfigParser, INSTRUCTIONS, import_config_from_plaintext, \
    write_config_template
from levy_extrema.io.report import write_bench_workbook
from levy_extrema.io.tables import load_golden, read_results, resolve_table, result_to_frame, write_results, \
    RESULT_COLUMNS
from levy_extrema.model.levy import BrownianMotion, KoBoL
from levy_extrema.pricers.payoffs import PayoffSpec, VanillaPut
from levy_extrema.pricers.price import PricingResult, PricingTask


class TestConfig(unittest.TestCase):

    def setUp(self):
        this_dir, this_filename = os.path.split(__file__)
        self.test_folder = os.path.join(this_dir, 'test_files', 'test_io')
        self.file_in = os.path.join(self.test_folder, 'run_config.txt')

    def test_import_config_from_plaintext(self):
        config = import_config_from_plaintext(self.file_in)

        self.assertDictEqual({'kind': 'kobol', 'nu': 1.2, 'lambda_plus': 1.0, 'lambda_minus': -2.0, 'm2': 0.1,
                              'mu': 0.0}, config.model)
        self.assertEqual((0.1, 1.0), config.task['T'])
        self.assertEqual((-0.05, 0.0), config.task['a1'])
        self.assertEqual((0.1,), config.task['a2'])
        self.assertEqual('gwr', config.numeric['method'])
        self.assertEqual(200, config.numeric['n_xi'])
        self.assertEqual('results.csv', config.output['csv'])
        self.assertEqual(12, config.output['digits'])

    def test_pricing_task(self):
        config = import_config_from_plaintext(self.file_in)
        task = config.pricing_task()
        scheme = config.laplace_scheme()

        self.assertIsInstance(task.model, KoBoL)
        self.assertAlmostEqual(0.1, task.model.second_moment(), places=14)
        self.assertEqual((0.1, 1.0), task.maturities)
        self.assertEqual([(-0.05, 0.1), (0.0, 0.1)], [(payoff.a1, payoff.a2) for payoff in task.payoffs])
        self.assertDictEqual({'n_plus': 200}, task.overrides)
        self.assertEqual('gwr', scheme.method)
        self.assertEqual(8, scheme.M)

    def test_barrier_config(self):
        config = import_config_from_plaintext(os.path.join(self.test_folder, 'barrier_config.txt'))
        payoffs = config.payoffs()

        self.assertIsInstance(config.build_model(), BrownianMotion)
        self.assertEqual([0.1, 0.2], [payoff.h for payoff in payoffs])
        self.assertIsInstance(payoffs[0].terminal, VanillaPut)

    def test_missing_key(self):
        config = RunConfig(model={'kind': 'brownian', 'sigma': 0.3}, task={'payoff': 'no_touch', 'T': (1.0,)})

        self.assertRaises(KeyError, config.payoffs)
        self.assertRaises(KeyError, config.set, 'task', 'strike_price', 1.0)
        self.assertRaises(KeyError, config.set, 'solver', 'tol', 1.0)

    def test_set_list_key(self):
        config = RunConfig()
        config.set('task', 'T', 0.5)

        self.assertEqual((0.5,), config.task['T'])

    def test_syntax_errors(self):
        for filename in ('bad_value.txt', 'bad_entry.txt', 'no_section.txt'):
            with self.assertRaises(SyntaxError):
                import_config_from_plaintext(os.path.join(self.test_folder, filename))

        with self.assertRaises(KeyError):
            import_config_from_plaintext(os.path.join(self.test_folder, 'bad_section.txt'))

    def test_parse_value(self):
        parser = ConfigParser()

        self.assertEqual(('T', (0.05, 0.25, 1.0)), parser.parse_entry('T = 0.05, 0.25, 1'))
        self.assertEqual(('tol', 1e-12), parser.parse_entry('tol = 1e-12'))
        self.assertEqual(('kind', 'kobol-general'), parser.parse_entry('kind = kobol-general'))
        self.assertRaises(SyntaxError, parser.parse_entry, 'nu = kobol')

    def test_write_config_template(self):
        file_out = os.path.join(self.test_folder, 'template.txt')
        write_config_template(file_out)

        with open(file_out, 'r') as f_in:
            self.assertTrue(f_in.read().startswith(INSTRUCTIONS))

        config = import_config_from_plaintext(file_out)

        self.assertEqual(0.2, config.model['nu'])
        self.assertEqual(25, len(config.payoffs()))
        self.assertEqual((0.25,), config.task['T'])

    def test_write_config_round_trip(self):
        file_out = os.path.join(self.test_folder, 'run_config_copy.txt')
        config = import_config_from_plaintext(self.file_in)
        write_config_template(file_out, config, print_instructions=False)

        copy = import_config_from_plaintext(file_out)

        self.assertDictEqual(config.model, copy.model)
        self.assertDictEqual(config.task, copy.task)
        self.assertDictEqual(config.numeric, copy.numeric)
        self.assertDictEqual(config.output, copy.output)


class TestTables(unittest.TestCase):

    def setUp(self):
        this_dir, this_filename = os.path.split(__file__)
        self.test_folder = os.path.join(this_dir, 'test_files', 'test_io')

    def _result(self):
        payoffs = (PayoffSpec(kind='cpdf', a1=-0.05, a2=0.1), PayoffSpec(kind='cpdf', a1=0.0, a2=0.1))
        task = PricingTask(model=BrownianMotion(sigma=0.3), payoffs=payoffs, maturities=(0.25, 1.0))
        values = np.array([[0.1234567890123456, 0.2], [0.3, 0.4]])
        return PricingResult(task=task, method='sinh', values=values, est_error=1e-12, timings={'transform': 8.0})

    def test_result_to_frame(self):
        data_df = result_to_frame(self._result())

        self.assertListEqual(RESULT_COLUMNS, list(data_df.columns))
        self.assertEqual(4, len(data_df))
        self.assertEqual(2.0, data_df['ms'][0])
        self.assertListEqual([0.25, 0.25, 1.0, 1.0], list(data_df['T']))
        self.assertListEqual([-0.05, 0.0, -0.05, 0.0], list(data_df['a1_or_h']))

    def test_write_results(self):
        file_out = os.path.join(self.test_folder, 'results.csv')
        data_df = result_to_frame(self._result())
        write_results(data_df, file_out)

        read_df = read_results(file_out)

        self.assertEqual(0.1234567890123456, read_df['value'][0])
        # whole-number columns come back as integers
        pd.testing.assert_frame_equal(data_df, read_df, check_dtype=False)

    def test_load_golden(self):
        vg_df = load_golden('vg')
        nig_df = load_golden('nig')

        self.assertEqual(25, len(vg_df))
        self.assertEqual(110, len(nig_df))
        self.assertTrue(np.all(vg_df['tolerance'] == 1e-10))
        self.assertTrue(np.all(nig_df.loc[nig_df['T'] == 15, 'tolerance'] == 1e-8))
        self.assertTrue(np.all(vg_df['a1'] <= vg_df['a2']))
        self.assertRaises(KeyError, load_golden, 'cgmy')

    def test_golden_tables_by_number(self):
        self.assertEqual('vg', resolve_table(1))
        self.assertEqual('nig', resolve_table('3'))
        self.assertEqual('nig', resolve_table('nig'))
        self.assertRaises(KeyError, resolve_table, 2)

        pd.testing.assert_frame_equal(load_golden('vg'), load_golden('1'))
        self.assertEqual(110, len(load_golden(3)))

    def test_golden_provenance(self):
        vg_df = load_golden('vg')
        nig_df = load_golden('nig')

        self.assertEqual('Table 1, row a2=0.025, col a1=-0.075', vg_df['provenance'][0])
        self.assertTrue(vg_df['provenance'].str.match(r'Table 1, row a2=\S+, col a1=\S+$').all())
        self.assertTrue(nig_df['provenance'].str.match(r'Table 3, block T=\S+, row a2=\S+, col a1=\S+$').all())

    def test_write_bench_workbook(self):
        file_out = os.path.join(self.test_folder, 'bench.xlsx')
        summary_df = pd.DataFrame({'T': [0.25], 'max_abs_err': [1e-11], 'passed': [True]})
        cells_df = pd.DataFrame({'T': [0.25], 'a1': [-0.05], 'a2': [0.1], 'abs_err': [1e-11]})
        timings_df = pd.DataFrame({'run': [0], 'ms_per_point': [5.0]})

        write_bench_workbook(file_out, summary_df, cells_df, timings_df)

        sheets = pd.read_excel(file_out, sheet_name=None)
        self.assertListEqual(['summary', 'cells', 'timings'], list(sheets))
        pd.testing.assert_frame_equal(cells_df, sheets['cells'])
