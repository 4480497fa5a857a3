""" This module reads and writes run configurations in a plain text format.

A configuration has four sections, model, task, numeric and output, each holding "key = value" lines. Values are
numbers, comma separated lists of numbers or words.
"""

from dataclasses import dataclass, field
from itertools import product
from re import compile
from typing import Dict, List, Tuple, Union

from ..model.levy import LevyModel, build_model
from ..pricers.payoffs import ConstantPayoff, DigitalPut, PayoffSpec, VanillaPut
from ..pricers.price import LaplaceScheme, PricingTask

INSTRUCTIONS = """
# Run configuration
# Format: sections in brackets, e.g. [model], followed by "key = value" lines
# values can be numbers, comma separated lists of numbers (e.g. T = 0.05, 0.25, 1) or words (e.g. kind = kobol)
# sections: model, task, numeric, output; every key can be overridden from the command line
# begin with # to comment out any line

"""

SECTIONS = {
    'model': ('kind', 'nu', 'lambda_plus', 'lambda_minus', 'm2', 'c', 'mu', 'sigma', 'c_plus', 'c_minus', 'nu_plus',
              'nu_minus', 'sigma2', 'strip_halfwidth'),
    'task': ('payoff', 'T', 'x1', 'x2', 'a1', 'a2', 'h', 'beta', 'terminal', 'k', 'strike', 'amount'),
    'numeric': ('tol', 'method', 'family', 'gwr_m', 'shift_a', 'omega_plus', 'omega_minus', 'omega_ell', 'n_xi',
                'n_minus', 'n_ell', 'n_iters', 'max_workers', 'seed', 'n_paths', 'n_steps', 'big_n'),
    'output': ('csv', 'digits', 'xlsx'),
}

LIST_KEYS = ('T', 'a1', 'a2', 'h', 'beta')

WORD_KEYS = ('kind', 'payoff', 'terminal', 'method', 'family', 'csv', 'xlsx')

INTEGER_KEYS = ('gwr_m', 'n_xi', 'n_minus', 'n_ell', 'n_iters', 'max_workers', 'seed', 'n_paths', 'n_steps',
                'big_n', 'digits')

DEFAULTS = {
    'model': {'kind': 'kobol', 'mu': 0.0},
    'task': {'payoff': 'cpdf', 'x1': 0.0, 'x2': 0.0, 'terminal': 'digital'},
    'numeric': {'tol': 1e-12, 'method': 'sinh', 'family': 'standard', 'gwr_m': 8, 'seed': 0},
    'output': {'digits': 16},
}

Value = Union[float, int, str, Tuple[float, ...]]


class ConfigParser:

    def __init__(self):
        key_re = r'[a-zA-Z]\w*'
        float_re = r'[-+]?(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?'
        word_re = r'[a-zA-Z][\w\-./]*'
        path_re = r'[\w\-./]+'

        float_list = float_re + r'(?:\s*,\s*' + float_re + ')*'
        self.regex_section = compile(r'^\[\s*(?P<section>' + key_re + r')\s*\]$')
        self.regex_entry = compile(r'^(?P<key>' + key_re + r')\s*=\s*(?P<value>' + float_list + '|' + word_re + '|'
                                   + path_re + ')$')
        self.regex_float = compile(r'^' + float_re + '$')

    def parse_section(self, line: str):
        match = self.regex_section.match(line)
        return match.group('section') if match else None

    def parse_entry(self, line: str) -> Tuple[str, Value]:
        match = self.regex_entry.match(line)

        if not match:
            raise SyntaxError('Unable to parse: ' + line)

        key = match.group('key')
        return key, self.parse_value(key, match.group('value'))

    def parse_value(self, key: str, value: str) -> Value:
        items = [item.strip() for item in value.split(',')]
        if not all(self.regex_float.match(item) for item in items):
            if len(items) > 1 or key not in WORD_KEYS:
                raise SyntaxError(f'Unable to parse: {key} = {value}')
            return value

        numbers = tuple(float(item) for item in items)
        if key in LIST_KEYS:
            return numbers
        if len(numbers) > 1:
            raise SyntaxError(f'Unable to parse: {key} = {value}, {key} takes a single value')
        if key in INTEGER_KEYS:
            return int(numbers[0])
        return numbers[0]


@dataclass
class RunConfig:
    """
    Configuration of one run.

    Arguments:
        model: model parameters, with the model kind under 'kind'.
        task: payoff kind, maturities, state and point grids.
        numeric: tolerance, inversion method and contour overrides.
        output: csv path and number of significant digits.
    """

    model: Dict[str, Value] = field(default_factory=dict)
    task: Dict[str, Value] = field(default_factory=dict)
    numeric: Dict[str, Value] = field(default_factory=dict)
    output: Dict[str, Value] = field(default_factory=dict)

    def __post_init__(self):
        for section, defaults in DEFAULTS.items():
            block = getattr(self, section)
            for key, value in defaults.items():
                block.setdefault(key, value)

    def set(self, section: str, key: str, value: Value):
        """ Sets a key, checking that the section and key exist. """
        if section not in SECTIONS:
            raise KeyError(f'Unknown section {section}, expected one of {list(SECTIONS)}.')
        if key not in SECTIONS[section]:
            raise KeyError(f'Unknown key {key} in section {section}.')
        if key in LIST_KEYS and not isinstance(value, tuple):
            value = (float(value),)
        getattr(self, section)[key] = value

    def build_model(self) -> LevyModel:
        params = {key: value for key, value in self.model.items() if key != 'kind'}
        return build_model(self.model['kind'], **params)

    def _require(self, key: str):
        if key not in self.task:
            raise KeyError(f'Task {self.task["payoff"]} needs the key {key}.')
        return self.task[key]

    def terminal_payoff(self):
        terminal = self.task['terminal']
        if terminal == 'digital':
            return DigitalPut(self._require('k'))
        if terminal == 'vanilla':
            return VanillaPut(self._require('strike'))
        if terminal == 'constant':
            return ConstantPayoff(self.task.get('amount', 1.0))
        raise ValueError(f'Unknown terminal payoff {terminal}, expected digital, vanilla or constant.')

    def payoffs(self) -> List[PayoffSpec]:
        """ The points of the task: the grid a1 x a2 for cpdf, one point per level otherwise. """
        kind = self.task['payoff']
        if kind == 'cpdf':
            return [PayoffSpec(kind='cpdf', a1=a1, a2=a2)
                    for a2, a1 in product(self._require('a2'), self._require('a1'))]
        if kind == 'no_touch':
            return [PayoffSpec(kind='no_touch', a2=a2) for a2 in self._require('a2')]
        if kind == 'barrier':
            terminal = self.terminal_payoff()
            return [PayoffSpec(kind='barrier', h=h, terminal=terminal) for h in self._require('h')]
        if kind == 'exchange':
            return [PayoffSpec(kind='exchange', beta=beta) for beta in self._require('beta')]
        raise ValueError(f'Unknown payoff {kind}, expected cpdf, no_touch, barrier or exchange.')

    def overrides(self) -> Dict[str, float]:
        names = {'omega_plus': 'omega_plus', 'omega_minus': 'omega_minus', 'n_xi': 'n_plus', 'n_minus': 'n_minus'}
        return {target: self.numeric[key] for key, target in names.items() if key in self.numeric}

    def pricing_task(self) -> PricingTask:
        return PricingTask(model=self.build_model(), payoffs=tuple(self.payoffs()),
                           maturities=tuple(self._require('T')), x1=self.task['x1'], x2=self.task['x2'],
                           tol=self.numeric['tol'], family=self.numeric['family'], overrides=self.overrides())

    def laplace_scheme(self) -> LaplaceScheme:
        numeric = self.numeric
        return LaplaceScheme(method=numeric['method'], M=numeric['gwr_m'], shift_a=numeric.get('shift_a'),
                             omega_l=numeric.get('omega_ell'), n_ell=numeric.get('n_ell'),
                             n_iters=numeric.get('n_iters', 3), max_workers=numeric.get('max_workers'))


def import_config_from_plaintext(filename: str) -> RunConfig:
    """
    Reads a run configuration from a file.

    Args:
        filename: file path.

    Returns:
        The configuration.
    """

    parser = ConfigParser()
    config = RunConfig()
    section = None

    with open(filename, 'r') as stream:
        for line in stream:
            # If line ends with comment ignore it as well
            line = line.split('#', 1)[0].strip()
            if not line:
                continue

            new_section = parser.parse_section(line)
            if new_section is not None:
                if new_section not in SECTIONS:
                    raise KeyError(f'Unknown section {new_section}, expected one of {list(SECTIONS)}.')
                section = new_section
                continue

            if section is None:
                raise SyntaxError('Unable to parse: ' + line + ', entries must follow a [section] header')

            key, value = parser.parse_entry(line)
            config.set(section, key, value)

    return config


def _format_value(value: Value) -> str:
    if isinstance(value, tuple):
        return ', '.join(repr(item) for item in value)
    return str(value)


def write_config_template(file_out: str, config: RunConfig = None, print_instructions: bool = True):
    """
    Writes a run configuration to a file.

    Args:
        file_out: file path.
        config: configuration to write, by default the setup of the vg golden table.
        print_instructions: print the format instructions as header.

    Returns:
        None
    """

    if config is None:
        config = RunConfig(model={'kind': 'kobol', 'nu': 0.2, 'lambda_plus': 1.0, 'lambda_minus': -2.0, 'm2': 0.1},
                           task={'payoff': 'cpdf', 'T': (0.25,), 'a1': (-0.075, -0.05, -0.025, 0.0, 0.025),
                                 'a2': (0.025, 0.05, 0.075, 0.1, 0.175)})

    with open(file_out, 'w') as f_out:
        if print_instructions:
            f_out.write(INSTRUCTIONS)
        for section in SECTIONS:
            f_out.write(f'[{section}]\n')
            for key, value in getattr(config, section).items():
                f_out.write(f'{key} = {_format_value(value)}\n')
            f_out.write('\n')
