"""
drinfeld command line

    python -m src.cli.main period --descriptor carlitz-q2
    python -m src.cli.main full-report --config job.json --format text

Values come from flags first, then the --config JSON file, then DRINFELD_*
environment variables, then built-in defaults. Exit status is 0 only when
every checked identity holds.
"""

import argparse
import json
import logging
import multiprocessing
import sys
from pathlib import Path

from pydantic import ValidationError

# Add project root to path
sys.path.insert(0, str(Path(__file__).parent.parent.parent))

from src.cli.schemas import COMMANDS, JobConfig
from src.cli.runner import run
from src.cli.renderer import render
from src.config import configure_logging, get_settings
from src.errors import DrinfeldError

log = logging.getLogger("drinfeld.cli")

# flag dest -> JobConfig field
_FLAG_FIELDS = {
    'descriptor': 'descriptor',
    'precision': 'precision',
    't_trunc': 't_trunc',
    'deg_cap': 'deg_cap',
    'branch': 'branch',
    'depth': 'depth',
    'B': 'B',
    'd': 'd',
    'point': 'points',
    'out': 'output',
    'format': 'format',
    'workers': 'workers',
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog='drinfeld', description='Periods, quasi-periods and t-motives of Drinfeld modules')
    parser.add_argument('command', choices=COMMANDS)
    parser.add_argument('--descriptor', help='Predefined name, JSON object or path to a JSON descriptor')
    parser.add_argument('--config', help='JSON file with job settings')
    parser.add_argument('--precision', type=int, help='Relative window of Puiseux values')
    parser.add_argument('--t-trunc', dest='t_trunc', type=int, help='Truncation N of series in t')
    parser.add_argument('--deg-cap', dest='deg_cap', type=int, help='Height bound D of relation searches')
    parser.add_argument('--branch', type=int, help='Branch selector for torsion towers')
    parser.add_argument('--depth', type=int, help='Depth of torsion towers (default: 4)')
    parser.add_argument('--endo-degree', dest='B', type=int, help='tau-degree cap of the endomorphism search')
    parser.add_argument('--endo-field', dest='d', type=int, help='Coefficient field degree of the endomorphism search')
    parser.add_argument('--point', action='append', help='Puiseux literal; may be repeated')
    parser.add_argument('--out', help='Write the report to this file')
    parser.add_argument('--format', choices=('json', 'text'), help='Report format (default: json)')
    parser.add_argument('--workers', type=int, help='Worker processes for full-report')
    parser.add_argument('--log-level', dest='log_level', help='Logging level (default: DRINFELD_LOG_LEVEL)')
    return parser


def build_config(args: argparse.Namespace) -> JobConfig:
    """Flags over the config file; unset values stay None for the environment to fill."""
    data = {}
    if args.config:
        data.update(json.loads(Path(args.config).read_text()))
    for dest, name in _FLAG_FIELDS.items():
        value = getattr(args, dest, None)
        if value is not None:
            data[name] = value
    data['command'] = args.command
    if 'descriptor' not in data:
        raise ValueError('a descriptor is required (--descriptor or "descriptor" in --config)')
    return JobConfig(**data)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    configure_logging(args.log_level)
    try:
        config = build_config(args)
    except (ValueError, ValidationError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2

    try:
        report = run(config, get_settings())
    except DrinfeldError as e:
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return 1

    text = render(report, config.format)
    if config.output:
        Path(config.output).write_text(text + "\n")
        log.info("report written to %s", config.output)
    else:
        print(text)
    return 0 if report.passed else 1


if __name__ == "__main__":
    # Required for spawn-based multiprocessing
    multiprocessing.freeze_support()
    sys.exit(main())
