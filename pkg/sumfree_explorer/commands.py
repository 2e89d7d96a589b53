"""The subcommands behind ``sumfreex`` and the shell.

Every command returns a :class:`Report`; :func:`dispatch` renders it in
the configured format and turns exceptions into exit codes:

- 0: success, or everything verified;
- 1: usage error;
- 2: a documented cap was exceeded;
- 3: a verification failed.
"""

import csv
import io
import json
import logging
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Dict, List, Optional, Sequence, TextIO

import yaml
from pygments import highlight
from pygments.formatters import Terminal256Formatter
from pygments.lexers import TurtleLexer
from pygments.lexers.data import YamlLexer
from rdflib import Graph

from sumfree_explorer import LimitExceeded
from sumfree_explorer.bitlinalg import (canonicalize, gaussian_binomial,
                                        gl2_order, parse_matrix_text,
                                        read_matrix_file)
from sumfree_explorer.config import OutputFormat, RunConfig, UsageError
from sumfree_explorer.fact import ContradictionDetected, FactError
from sumfree_explorer.gf2n import FieldError, FieldSpec, poly_str
from sumfree_explorer.ledger import ROW_HEADER, Ledger
from sumfree_explorer.pointeval import DependentBasis, fk_eval, theta_eval
from sumfree_explorer.rule import RuleError
from sumfree_explorer.rules.threshold import threshold_exact
from sumfree_explorer.subcalc import gamma
from sumfree_explorer.sympoly import (PolyError, is_symmetric, lambda_set,
                                      monomial_symmetric, theta_sym)
from sumfree_explorer.zerosum import (CensusResult, Selector, WitnessError,
                                      WitnessStore, census, census_trend,
                                      check_all_criteria, find_witness,
                                      inverse_sum, sf_table, zk_count)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_LIMIT = 2
EXIT_VERIFICATION = 3

DATA_DIR = Path(__file__).parent / 'data'
SHIPPED_EXAMPLES = {
    17: ('example17_u.txt', 'example17_v.txt'),
    19: ('example19_u.txt', 'example19_v.txt'),
}


@dataclass
class Report:
    data: dict
    """Content of the text and JSON renderings."""
    header: Optional[Sequence[str]] = None
    rows: List[Sequence] = field(default_factory=list)
    """Content of the CSV rendering."""
    graph: Optional[Graph] = None
    """Content of the Turtle rendering."""
    raw: Optional[str] = None
    """Written as is, whatever the output format."""
    exit_code: int = EXIT_OK


def configure_logging(verbose: bool = False) -> None:
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.WARNING,
        format='%(levelname)s %(name)s: %(message)s',
        stream=sys.stderr,
    )


def _provenance(config: RunConfig, f: Optional[FieldSpec]) -> dict:
    return {'modulus': format(f.modulus, 'x') if f else None,
            'seed': config.seed}


def cmd_theta(config: RunConfig) -> Report:
    poly = theta_sym(config.k)
    data = {
        'k': config.k,
        'terms': len(poly),
        'degree': poly.degree,
        'homogeneous': poly.is_homogeneous,
        'symmetric': is_symmetric(poly),
        'partitions': [str(partition) for partition in lambda_set(config.k)],
    }
    rows = [list(monomial) for monomial in poly.sorted_terms()]
    header = [f'x{i}' for i in range(1, config.k + 1)]
    # one monomial per line, exponents separated by spaces
    raw = poly.dump() if config.dump else None
    return Report(data, header, rows, raw=raw)


def cmd_partitions(config: RunConfig) -> Report:
    partitions = lambda_set(config.k)
    rows = [(str(p), len(p), len(monomial_symmetric(p, config.k)))
            for p in partitions]
    data = {'k': config.k, 'count': len(partitions),
            'partitions': [row[0] for row in rows]}
    return Report(data, ('partition', 'parts', 'monomials'), rows)


def _read_basis(config: RunConfig):
    try:
        if config.path is None:
            words, headers = parse_matrix_text(sys.stdin.read())
        else:
            words, headers = read_matrix_file(config.path)
    except OSError as err:
        raise UsageError(f'Cannot read matrix: {err}')
    except ValueError as err:
        raise UsageError(f'Malformed matrix: {err}')
    if not words:
        raise UsageError('The matrix has no rows')
    n = config.n or int(headers['n'])
    modulus = config.modulus or headers.get('modulus')
    f = RunConfig(config.command, n=n, modulus=modulus,
                  data_dir=config.data_dir).field()
    return words, f


def cmd_check_subspace(config: RunConfig) -> Report:
    words, f = _read_basis(config)
    E = canonicalize(words, f)
    if E.dim != len(words):
        raise DependentBasis(f'{len(words)} rows span only dim {E.dim}')
    report = check_all_criteria(E)
    data = {
        'n': f.n,
        'k': E.dim,
        'basis': [format(word, 'x') for word in E.vectors],
        'inverse_sum': format(inverse_sum(E), 'x'),
        'checks': report.to_dict(),
        'agree': report.agree,
        'zero_sum': report.all_zero,
        **_provenance(config, f),
    }
    return Report(data, ('criterion', 'zero'),
                  sorted(report.to_dict().items()),
                  exit_code=EXIT_OK if report.agree else EXIT_VERIFICATION)


def cmd_search(config: RunConfig) -> Report:
    f = config.field()
    witness = find_witness(config.n, config.k, config.strategy,
                           config.budget, config.seed, f, config.workers)
    data = {'n': config.n, 'k': config.k, 'strategy': config.strategy,
            'found': witness is not None,
            'witness': witness.to_dict() if witness else None,
            **_provenance(config, f)}
    if witness is not None and config.store:
        WitnessStore(config.witness_store).append(witness)
    rows = [(witness.identifier, witness.n, witness.k,
             ' '.join(witness.basis))] if witness else []
    return Report(data, ('witness', 'n', 'k', 'basis'), rows)


def _census_report(config: RunConfig, results: List[CensusResult]) -> Report:
    rows = [result.csv_row() + (f'{result.density:.6f}',
                                f'{result.deviation:.6f}')
            for result in results]
    data = {'results': [dict(result.to_dict(),
                             density=round(result.density, 6),
                             deviation=round(result.deviation, 6))
                        for result in results],
            'modulus': ','.join(result.modulus for result in results),
            'seed': config.seed}
    return Report(data, CensusResult.CSV_HEADER + ('density', 'deviation'),
                  rows)


def cmd_census(config: RunConfig) -> Report:
    f = config.field()
    result = census(Selector(config.poly), config.n, config.k, f,
                    config.shard, config.workers)
    return _census_report(config, [result])


def cmd_trend(config: RunConfig) -> Report:
    if config.m_min > config.m_max:
        raise UsageError('m_min must not exceed m_max')
    results = census_trend(config.k, range(config.m_min, config.m_max + 1),
                           Selector(config.poly), config.workers)
    return _census_report(config, results)


def cmd_zk(config: RunConfig) -> Report:
    f = config.field()
    budget = {} if config.budget is None else {'budget': config.budget}
    count = zk_count(config.n, config.k, f, workers=config.workers,
                     shard=config.shard, **budget)
    data = {'n': config.n, 'k': config.k, 'zero_sum_subspaces': count,
            'subspaces': gaussian_binomial(config.n, config.k),
            'gl2_order': gl2_order(config.k),
            'shard': '/'.join(str(part) for part in config.shard),
            **_provenance(config, f)}
    return Report(data, ('n', 'k', 'zero_sum_subspaces', 'subspaces'),
                  [(config.n, config.k, count, data['subspaces'])])


def cmd_sf_table(config: RunConfig) -> Report:
    f = config.field()
    table = sf_table(config.n, f, config.seed, config.workers)
    entries = [entry.to_dict() for _, entry in sorted(table.entries.items())]
    data = {'n': config.n, 'sf': table.sf, 'k': table.k_set,
            'entries': entries, **_provenance(config, f)}
    rows = [(entry['k'], entry['status'], entry['method'],
             entry['witness'] or '') for entry in entries]
    return Report(data, ('k', 'status', 'method', 'witness'), rows)


def cmd_derive(config: RunConfig) -> Report:
    if config.n < 3:
        raise UsageError('derive needs n >= 3')
    witnesses = WitnessStore(config.witness_store).load(config.n)
    ledger = Ledger(config.n, witnesses=witnesses).derive()
    problems = ledger.audit()
    data = ledger.summary()
    data['explanations'] = {k: ledger.explain(k) for k in range(1, config.n)}
    data['audit'] = problems
    data['seed'] = config.seed
    for problem in problems:
        logger.error('audit: %s', problem)
    return Report(data, ROW_HEADER, ledger.rows(), ledger.to_graph(),
                  exit_code=EXIT_VERIFICATION if problems else EXIT_OK)


def cmd_thresholds(config: RunConfig) -> Report:
    try:
        report = threshold_exact(config.k)
    except ValueError as err:
        raise UsageError(str(err))
    data = dict(report.to_dict(), seed=config.seed)
    return Report(data, tuple(report.to_dict()),
                  [tuple(report.to_dict().values())])


def verify_example(n: int) -> Dict[str, bool]:
    """Re-check one shipped example: the ``u`` basis spans a zero-sum
    subspace ``E``, ``F_k`` vanishes on it, the ``v`` basis spans
    ``gamma(E)`` and ``Theta_k`` vanishes on it."""
    u_name, v_name = SHIPPED_EXAMPLES[n]
    u_words, headers = read_matrix_file(DATA_DIR / u_name)
    v_words, _ = read_matrix_file(DATA_DIR / v_name)
    f = FieldSpec.from_hex(n, headers['modulus'])
    E = canonicalize(u_words, f)
    report = check_all_criteria(E)
    return {
        'dimension': E.dim == len(u_words),
        'inverse_sum': inverse_sum(E) == 0,
        'fk': fk_eval(u_words, f) == 0,
        'gamma': gamma(E) == canonicalize(v_words, f),
        'theta': theta_eval(v_words, f) == 0,
        'criteria': report.agree and report.all_zero,
    }


def cmd_verify_examples(config: RunConfig) -> Report:
    results = {n: verify_example(n) for n in SHIPPED_EXAMPLES}
    passed = all(all(checks.values()) for checks in results.values())
    rows = [(n, check, ok) for n, checks in results.items()
            for check, ok in checks.items()]
    data = {'examples': results, 'passed': passed, 'seed': config.seed,
            'modulus': {n: read_matrix_file(DATA_DIR / SHIPPED_EXAMPLES[n][0])
                        [1]['modulus'] for n in SHIPPED_EXAMPLES}}
    return Report(data, ('n', 'check', 'passed'), rows,
                  exit_code=EXIT_OK if passed else EXIT_VERIFICATION)


def cmd_modulus(config: RunConfig) -> Report:
    f = config.field()
    data = {'n': f.n, 'polynomial': poly_str(f.modulus),
            'irreducible': True, **_provenance(config, f)}
    return Report(data, ('n', 'modulus', 'polynomial'),
                  [(f.n, data['modulus'], data['polynomial'])])


COMMANDS: Dict[str, Callable[[RunConfig], Report]] = {
    'theta': cmd_theta,
    'partitions': cmd_partitions,
    'check-subspace': cmd_check_subspace,
    'search': cmd_search,
    'census': cmd_census,
    'zk': cmd_zk,
    'sf-table': cmd_sf_table,
    'derive': cmd_derive,
    'thresholds': cmd_thresholds,
    'verify-paper-examples': cmd_verify_examples,
    'trend': cmd_trend,
    'modulus': cmd_modulus,
}


def _comment_lines(data: dict) -> str:
    return ''.join(f'# {key} {data[key]}\n' for key in ('modulus', 'seed')
                   if key in data)


def render(report: Report, output_format: OutputFormat,
           tty: bool = False) -> str:
    if report.raw is not None:
        return report.raw
    if output_format is OutputFormat.JSON:
        return json.dumps(report.data, indent=2, sort_keys=True) + '\n'
    if output_format is OutputFormat.CSV:
        if report.header is None:
            raise UsageError('This command has no CSV output')
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator='\n')
        writer.writerow(report.header)
        writer.writerows(report.rows)
        return _comment_lines(report.data) + buffer.getvalue()
    if output_format is OutputFormat.TTL:
        if report.graph is None:
            raise UsageError('Only derive has Turtle output')
        ttl = _comment_lines(report.data) + report.graph.serialize(
            format='turtle')
        if tty:
            return highlight(ttl, TurtleLexer(),
                             Terminal256Formatter(style='vim'))
        return ttl
    text = yaml.dump(report.data, allow_unicode=True, sort_keys=False)
    if tty:
        return highlight(text, YamlLexer(), Terminal256Formatter(style='vim'))
    return text


def run(config: RunConfig) -> Report:
    return COMMANDS[config.command](config)


def _fail(err: TextIO, error: Exception, code: int) -> int:
    err.write(f'{type(error).__name__}: {error}\n')
    return code


def dispatch(config: RunConfig, out: Optional[TextIO] = None,
             err: Optional[TextIO] = None,
             tty: Optional[bool] = None) -> int:
    """Run ``config`` and write the report to ``out``. Returns the exit
    code. Text and Turtle output is highlighted when ``tty`` is true,
    which defaults to whether ``out`` is a terminal."""
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    if tty is None:
        tty = getattr(out, 'isatty', lambda: False)()
    try:
        report = run(config)
        text = render(report, config.output_format, tty)
    except LimitExceeded as error:
        return _fail(err, error, EXIT_LIMIT)
    except (WitnessError, RuleError, ContradictionDetected) as error:
        return _fail(err, error, EXIT_VERIFICATION)
    except (UsageError, FieldError, DependentBasis, PolyError, FactError,
            ValueError) as error:
        return _fail(err, error, EXIT_USAGE)
    out.write(text)
    return report.exit_code
