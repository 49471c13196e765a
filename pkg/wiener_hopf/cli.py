"""
Command-line surface: classify, deficiency, proper, lab and lalescu

Every command writes one JSON report that embeds the resolved config.
Exit codes: 0 success, 1 parse/validation or numerical error, 2 an
unreliable classification or a failed check, 3 an Inconclusive properness
verdict.
"""
import argparse
import json
import logging
import sys
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from .config import load_config
from .lab import suite_registry
from .lalescu import LalescuSuite
from .rational import SpectralClassifier, deficiency
from .storage import ReportStorage, numpy_handler, save_json
from .symbols import INCONCLUSIVE, RationalSymbol, Symbol, parse_symbol, properness_test
from .utils.exceptions import ParseError, ValidationError, WienerHopfError
from .utils.logger import setup_logger

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_FAILED = 2
EXIT_INCONCLUSIVE = 3

LAB_KEYS = ('tol_constant', 'rank_tol', 'min_ratio', 'residual_floor')
LALESCU_KEYS = ('max_n', 'cheb_max_n', 'moment_max_k', 'laguerre_terms', 'quad_panels',
                'quad_order', 'x_max', 'bump', 'perturb_norm')
RANGE_OPTIONS = ('--re', '--im')

logger = logging.getLogger(__name__)


def parse_range(text: str) -> np.ndarray:
    """
    Parse one axis of a λ grid

    `a:b:k` is k equispaced values from a to b (k = 0 gives an empty axis),
    `v1,v2,...` an explicit list and `v` a single value.
    """
    text = (text or '').strip()
    if not text:
        raise ParseError("Empty range")
    try:
        if ':' in text:
            parts = text.split(':')
            if len(parts) != 3:
                raise ParseError(f"Range must look like a:b:k, got '{text}'")
            count = int(parts[2])
            if count < 0:
                raise ParseError(f"Negative point count in '{text}'")
            return np.linspace(float(parts[0]), float(parts[1]), count)
        return np.array([float(v) for v in text.split(',')])
    except ValueError:
        raise ParseError(f"Cannot parse range '{text}'")


def lambda_grid(re_text: str, im_text: str) -> List[complex]:
    """Cartesian λ grid, real part outermost"""
    return [complex(a, b) for a in parse_range(re_text) for b in parse_range(im_text)]


def parse_sizes(text: str) -> List[int]:
    try:
        return [int(v) for v in text.split(',')]
    except ValueError:
        raise ParseError(f"Grid sizes must be comma-separated integers, got '{text}'")


def _rational(symbol: Symbol) -> RationalSymbol:
    if not isinstance(symbol, RationalSymbol):
        raise ValidationError(f"{symbol.describe()} is not a rational symbol")
    return symbol


def cmd_classify(args: argparse.Namespace, config: Dict[str, Any]) -> Tuple[Dict[str, Any], int]:
    """Classify every λ of the grid for a rational symbol"""
    symbol = _rational(parse_symbol(args.sym))
    lams = lambda_grid(args.re, args.im)
    logger.info(f"Classifying {len(lams)} λ values for {symbol.describe()}")
    records = SpectralClassifier(symbol.P, symbol.Q, config).classify_grid(lams)
    unreliable = any(record.unreliable for record in records)
    payload = {'symbol': symbol.describe(), 'records': [record.to_record() for record in records]}
    return payload, EXIT_FAILED if unreliable else EXIT_OK


def cmd_deficiency(args: argparse.Namespace, config: Dict[str, Any]) -> Tuple[Dict[str, Any], int]:
    symbol = _rational(parse_symbol(args.sym))
    report = deficiency(symbol.P, symbol.Q, config['polycore']['eps_real'])
    logger.info(f"Deficiency indices of {symbol.describe()}: ({report.n_plus}, {report.n_minus})")
    return {'symbol': symbol.describe(), **report.to_dict()}, EXIT_OK


def cmd_proper(args: argparse.Namespace, config: Dict[str, Any]) -> Tuple[Dict[str, Any], int]:
    symbol = parse_symbol(args.sym)
    verdict = properness_test(symbol, config['quadrature'])
    logger.info(f"{symbol.describe()}: {verdict.verdict}")
    payload = {'symbol': symbol.describe(), **verdict.to_dict()}
    return payload, EXIT_INCONCLUSIVE if verdict.verdict == INCONCLUSIVE else EXIT_OK


def _suite_parameters(args: argparse.Namespace, config: Dict[str, Any], section: str,
                      keys: Tuple[str, ...]) -> Dict[str, Any]:
    parameters = {key: config[section][key] for key in keys if key in config[section]}
    parameters['seed'] = config['cli']['seed'] if args.seed is None else args.seed
    if args.x_max is not None:
        parameters['x_max'] = args.x_max
    if args.n is not None:
        parameters['n'] = parse_sizes(args.n)
    return parameters


def _storage(args: argparse.Namespace, config: Dict[str, Any], default: bool) -> Optional[ReportStorage]:
    path = args.dump_dir or (config['cli']['output_dir'] if default else None)
    return ReportStorage(path, timestamp=not args.no_timestamp) if path else None


def cmd_lab(args: argparse.Namespace, config: Dict[str, Any]) -> Tuple[Dict[str, Any], int]:
    """Run one registered half-line lab suite"""
    parameters = _suite_parameters(args, config, 'lab', LAB_KEYS)
    parameters['x_max'] = parameters.get('x_max', config['lab']['x_max'])
    parameters.setdefault('n', list(config['lab']['n']))
    parameters['allow_regularized'] = args.allow_regularized
    suite = suite_registry.create_suite(args.suite, parameters)
    symbol = parse_symbol(args.sym) if args.sym else None

    logger.info(f"Running lab suite {args.suite} at n = {suite.parameters['n']}")
    result = suite.run(symbol)
    payload = result.to_dict(include_timestamp=not args.no_timestamp)

    storage = _storage(args, config, default=False)
    if storage is not None:
        payload['dumps'] = storage.save_dumps(result.dumps, args.suite)
    if not result.passed:
        logger.warning(f"Failed checks: {result.failed_checks()}")
    return payload, EXIT_OK if result.passed else EXIT_FAILED


def cmd_lalescu(args: argparse.Namespace, config: Dict[str, Any]) -> Tuple[Dict[str, Any], int]:
    """Run the Lalescu validation suite and write its plot data"""
    parameters = _suite_parameters(args, config, 'lalescu', LALESCU_KEYS)
    parameters.setdefault('n', [config['lalescu']['grid_points'], 2 * config['lalescu']['grid_points']])
    if args.perturb_norm is not None:
        parameters['perturb_norm'] = args.perturb_norm
    if args.max_n is not None:
        parameters['max_n'] = args.max_n

    suite = LalescuSuite()
    suite.set_parameters(parameters)
    logger.info(f"Running Lalescu suite (max_n = {suite.parameters['max_n']})")
    result = suite.run()
    payload = result.to_dict(include_timestamp=not args.no_timestamp)
    payload['plots'] = _storage(args, config, default=True).save_dumps(result.dumps, 'lalescu')
    if not result.passed:
        logger.warning(f"Failed checks: {result.failed_checks()}")
    return payload, EXIT_OK if result.passed else EXIT_FAILED


COMMANDS = {
    'classify': cmd_classify,
    'deficiency': cmd_deficiency,
    'proper': cmd_proper,
    'lab': cmd_lab,
    'lalescu': cmd_lalescu,
}


class ArgumentParser(argparse.ArgumentParser):
    """argparse parser whose usage errors surface as ParseError (exit code 1)"""

    def error(self, message):
        raise ParseError(message)


def build_parser() -> ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--config', help='JSON config merged over the defaults')
    common.add_argument('--out', help='Report path (stdout when omitted)')
    common.add_argument('--no-timestamp', action='store_true', dest='no_timestamp',
                        help='Omit timestamps for reproducible output')

    parser = ArgumentParser(prog='wiener_hopf', description='Wiener-Hopf operator spectral analysis')
    subparsers = parser.add_subparsers(dest='command', required=True)

    classify = subparsers.add_parser('classify', parents=[common], help='Spectral classification over a λ grid')
    classify.add_argument('--sym', required=True, help='Rational symbol, e.g. rational:2/1,0,1')
    classify.add_argument('--re', default='0', help='Real parts: a:b:k, v1,v2 or v')
    classify.add_argument('--im', default='0', help='Imaginary parts: a:b:k, v1,v2 or v')

    for name, help_text in (('deficiency', 'Deficiency indices of a real rational symbol'),
                            ('proper', 'Properness verdict')):
        sub = subparsers.add_parser(name, parents=[common], help=help_text)
        sub.add_argument('--sym', required=True)

    for name, help_text in (('lab', 'Half-line discretization lab suite'),
                            ('lalescu', 'Lalescu operator validation suite')):
        sub = subparsers.add_parser(name, parents=[common], help=help_text)
        sub.add_argument('--n', help='Comma-separated half-line grid sizes (powers of two)')
        sub.add_argument('--x-max', type=float, dest='x_max')
        sub.add_argument('--seed', type=int)
        sub.add_argument('--dump-dir', dest='dump_dir', help='Directory for CSV dumps')

    lab = subparsers.choices['lab']
    lab.add_argument('--suite', required=True, help=f"One of {', '.join(suite_registry.list_suites())}")
    lab.add_argument('--sym', help='Symbol under test (suite default when omitted)')
    lab.add_argument('--allow-regularized', action='store_true', dest='allow_regularized')

    lalescu = subparsers.choices['lalescu']
    lalescu.add_argument('--perturb-norm', type=float, dest='perturb_norm')
    lalescu.add_argument('--max-n', type=int, dest='max_n')
    return parser


def bind_range_values(argv: List[str]) -> List[str]:
    """Join `--re VALUE` into `--re=VALUE` so argparse accepts ranges such as -1:3:5"""
    bound: List[str] = []
    tokens = iter(argv)
    for token in tokens:
        value = next(tokens, None) if token in RANGE_OPTIONS else None
        bound.append(token if value is None else f"{token}={value}")
    return bound


def write_report(payload: Dict[str, Any], out: Optional[str]) -> None:
    if out:
        if not save_json(payload, out):
            raise WienerHopfError(f"Could not write report to {out}")
        return
    print(json.dumps(payload, default=numpy_handler, indent=2, ensure_ascii=False))


def main(argv: Optional[List[str]] = None) -> int:
    """Entry point; returns the process exit code"""
    # stdout carries the JSON report
    setup_logger("wiener_hopf", stream=sys.stderr)
    command = None
    try:
        args = build_parser().parse_args(bind_range_values(sys.argv[1:] if argv is None else list(argv)))
        command = args.command
        config = load_config(args.config)
        log_config = config['logging']
        setup_logger("wiener_hopf", log_config.get('file'), log_config.get('level') or 'INFO', sys.stderr)

        payload, exit_code = COMMANDS[command](args, config)
        report = {'command': command, 'exit_code': exit_code, **payload, 'config': config}
        write_report(report, args.out)
        return exit_code
    except WienerHopfError as e:
        logger.error(f"{command or 'wiener_hopf'} failed: {e}")
        return EXIT_ERROR
    except (ValueError, TypeError) as e:
        logger.error(f"{command or 'wiener_hopf'} rejected its input: {e}")
        return EXIT_ERROR


if __name__ == '__main__':
    sys.exit(main())
