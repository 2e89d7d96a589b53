"""Run configuration shared by the command line and the shell."""

import argparse
import os
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Optional, Sequence, Tuple

from appdirs import AppDirs

from sumfree_explorer.gf2n import FieldError, FieldSpec, default_modulus

DATA_DIR_VARIABLE = 'SUMFREEX_DATA_DIR'
WITNESS_STORE_NAME = 'witnesses.jsonl'


class UsageError(Exception):
    pass


class OutputFormat(str, Enum):
    JSON = 'json'
    CSV = 'csv'
    TEXT = 'text'
    TTL = 'ttl'


DEFAULT_FORMATS = {
    'census': OutputFormat.CSV,
    'derive': OutputFormat.CSV,
    'trend': OutputFormat.CSV,
    'search': OutputFormat.JSON,
}


def default_data_dir() -> Path:
    configured = os.environ.get(DATA_DIR_VARIABLE)
    if configured:
        return Path(configured)
    return Path(AppDirs('sumfree-explorer', 'sumfree').user_data_dir)


def parse_shard(text: str) -> Tuple[int, int]:
    """Parse ``i/t``: shard ``i`` (0-based) of ``t``."""
    try:
        index, total = (int(part) for part in text.split('/'))
    except ValueError:
        raise argparse.ArgumentTypeError(
            f'shard must look like i/t, got {text!r}'
        )
    return index, total


@dataclass
class RunConfig:
    command: str
    n: Optional[int] = None
    k: Optional[int] = None
    modulus: Optional[str] = None
    seed: int = 0
    budget: Optional[int] = None
    shard: Tuple[int, int] = (0, 1)
    workers: int = 1
    output_format: Optional[OutputFormat] = None
    witness_store: Optional[Path] = None
    data_dir: Path = field(default_factory=default_data_dir)
    verbose: bool = False
    # Per-command options
    dump: bool = False
    poly: str = 'theta'
    strategy: str = 'random'
    path: Optional[Path] = None
    m_min: Optional[int] = None
    m_max: Optional[int] = None
    store: bool = False

    def __post_init__(self) -> None:
        if self.output_format is None:
            self.output_format = DEFAULT_FORMATS.get(self.command,
                                                     OutputFormat.TEXT)
        else:
            self.output_format = OutputFormat(self.output_format)
        if self.witness_store is None:
            self.witness_store = Path(self.data_dir) / WITNESS_STORE_NAME
        self.validate()

    def validate(self) -> None:
        index, total = self.shard
        if total < 1 or not 0 <= index < total:
            raise UsageError(f'Invalid shard {index}/{total}')
        if self.workers < 1:
            raise UsageError('--workers must be at least 1')
        if self.budget is not None and self.budget < 1:
            raise UsageError('--budget must be positive')
        if self.n is not None and self.n < 1:
            raise UsageError('n must be positive')
        if self.k is not None and self.k < 1:
            raise UsageError('k must be positive')
        if self.modulus is not None and self.n is not None:
            self.field()

    def field(self) -> FieldSpec:
        """The field for ``n``: the ``--modulus`` if given, else the
        default modulus."""
        if self.n is None:
            raise UsageError(f'{self.command} does not take n')
        if self.modulus is None:
            return default_modulus(self.n)
        try:
            return FieldSpec.from_hex(self.n, self.modulus)
        except (FieldError, ValueError) as err:
            raise UsageError(f'Invalid modulus {self.modulus}: {err}')


class ArgumentParser(argparse.ArgumentParser):
    """Raises :class:`UsageError` instead of exiting, so the shell can keep
    running after a typo."""

    def error(self, message: str):
        raise UsageError(message)


def _common_options() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--modulus', help='irreducible modulus, hex')
    common.add_argument('--seed', type=int, default=0)
    common.add_argument('--budget', type=int,
                        help='trial budget for searches and sweeps')
    common.add_argument('--shard', type=parse_shard, default=(0, 1),
                        help='run shard i of t (i/t)')
    common.add_argument('--workers', type=int, default=1)
    common.add_argument('--format', dest='output_format',
                        choices=[fmt.value for fmt in OutputFormat])
    common.add_argument('--witness-store', type=Path)
    common.add_argument('--data-dir', type=Path)
    common.add_argument('--verbose', '-v', action='store_true')
    return common


def build_parser() -> ArgumentParser:
    common = _common_options()
    parser = ArgumentParser(
        prog='sumfreex',
        description='Zero-sum subspaces of the inverse function over '
                    'GF(2^n)',
    )
    sub = parser.add_subparsers(dest='command', required=True,
                                parser_class=ArgumentParser)

    theta = sub.add_parser('theta', parents=[common],
                           help='the symmetric criterion polynomial')
    theta.add_argument('--dump', action='store_true',
                       help='print every monomial')
    theta.add_argument('k', type=int)

    partitions = sub.add_parser('partitions', parents=[common],
                                help='2-adic partitions of 2^(k-1)')
    partitions.add_argument('k', type=int)

    check = sub.add_parser('check-subspace', parents=[common],
                           help='check a basis with all three criteria')
    check.add_argument('path', type=Path, nargs='?',
                       help='matrix file (default: standard input)')
    check.add_argument('--n', type=int, dest='n')

    search = sub.add_parser('search', parents=[common],
                            help='search for a zero-sum subspace')
    search.add_argument('n', type=int)
    search.add_argument('k', type=int)
    search.add_argument('--strategy', choices=['random', 'exhaustive'],
                        default='random')
    search.add_argument('--store', action='store_true',
                        help='append the witness to the witness store')

    census = sub.add_parser('census', parents=[common],
                            help='count zeros of F_k or Theta_k')
    census.add_argument('n', type=int)
    census.add_argument('k', type=int)
    census.add_argument('--poly', choices=['fk', 'theta'], default='theta')

    zk = sub.add_parser('zk', parents=[common],
                        help='count zero-sum subspaces')
    zk.add_argument('n', type=int)
    zk.add_argument('k', type=int)

    sf = sub.add_parser('sf-table', parents=[common],
                        help='certify SF_n by witness or exhaustion')
    sf.add_argument('n', type=int)

    derive = sub.add_parser('derive', parents=[common],
                            help='derive K_n / SF_n memberships')
    derive.add_argument('n', type=int)

    thresholds = sub.add_parser('thresholds', parents=[common],
                                help='size thresholds for k')
    thresholds.add_argument('k', type=int)

    sub.add_parser('verify-paper-examples', parents=[common],
                   help='re-check the shipped n = 17 and n = 19 examples')

    trend = sub.add_parser('trend', parents=[common],
                           help='censuses of Theta_k for growing fields')
    trend.add_argument('k', type=int)
    trend.add_argument('m_min', type=int)
    trend.add_argument('m_max', type=int)
    trend.add_argument('--poly', choices=['fk', 'theta'], default='theta')

    modulus = sub.add_parser('modulus', parents=[common],
                             help='the default modulus for n')
    modulus.add_argument('n', type=int)
    return parser


def parse_config(argv: Sequence[str]) -> RunConfig:
    args = vars(build_parser().parse_args(list(argv)))
    if args.get('data_dir') is None:
        args.pop('data_dir', None)
    return RunConfig(**args)
