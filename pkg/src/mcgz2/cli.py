# -*- coding: utf-8 -*-

"""The CLI module for MCGz2.

Every subcommand writes a report to standard output and exits with status 0 if all of its checks passed, 1 if a
verification failed, and 2 on a usage error.
"""

import functools
import logging
import time
from contextlib import contextmanager
from typing import Dict, List, Optional, Sequence, Tuple

import click
import numpy as np

from mcgz2.constants import (
    IDENTITY_PARAMETER_RANGE, MCGZ2_CONNECTION, MCGZ2_KRANGE, SP10_ORDER, XI_GROUP_ORDER,
)
from mcgz2.exceptions import ConfigurationError, ExpressionSyntaxError, MCGz2Error, NotABasisError, UnknownNameError
from mcgz2.expressions import describe_letters, parse_class_expr, parse_factorization_expr
from mcgz2.factorization import (
    euler_characteristic, list_scripts, parity, random_moves, run_equivalence_script, total_monodromy_sp2, xi, y_fact,
)
from mcgz2.manager import Manager
from mcgz2.quadform import (
    arf, arf_by_majority, cell_complex_check, distinguish as distinguish_xi, exclusion_table, find_certificate,
    graph_from, load_graph_document, load_graphs, quadratic_refinement_check, transvection_invariance_check,
    verify_certificate,
)
from mcgz2.reports import FORMATS, ReportDocument
from mcgz2.spgroup import (
    TWIST_IDENTITIES, orthogonal_group_order, same_subgroup, sweep_twist_identity, symplectic_group_order,
    twist_matrix,
)
from mcgz2.surface import CurveRegistry, get_registry, solve_stallings_class, validate_registry

__all__ = ['main', 'run_command']

logger = logging.getLogger(__name__)


class PairType(click.ParamType):
    """An integer pair written ``p,q``."""

    name = 'pair'

    def convert(self, value, param, ctx):
        if isinstance(value, tuple):
            return value
        try:
            p, q = (int(part) for part in value.split(','))
        except ValueError:
            self.fail(f'{value!r} is not a pair of integers like 1,0', param, ctx)
        return p, q


PAIR = PairType()


def common_options(f):
    """Add the options shared by every report-writing subcommand."""

    @click.option('-f', '--format', 'fmt', type=click.Choice(FORMATS), default='text', help='Report format')
    @click.option('--registry', 'registry_path', type=click.Path(dir_okay=False), help='Curve registry file')
    @click.option('-v', '--verbose', is_flag=True, help='Verbose output')
    @functools.wraps(f)
    def wrapper(*args, **kwargs):
        logging.basicConfig(level=(logging.DEBUG if kwargs['verbose'] else logging.INFO))
        return f(*args, **kwargs)

    return wrapper


def cache_options(f):
    """Add the options selecting the stabilizer-chain cache."""
    f = click.option('--no-cache', is_flag=True, help='Keep chains in memory only')(f)
    f = click.option('--connection', help=f'SQLAlchemy connection. Defaults to {MCGZ2_CONNECTION}')(f)
    f = click.option('--cache', 'cache_dir', type=click.Path(file_okay=False), help='Cache directory')(f)
    return f


@contextmanager
def usage_errors():
    """Turn input problems into usage errors (exit status 2)."""
    try:
        yield
    except (ExpressionSyntaxError, UnknownNameError, ConfigurationError, NotABasisError) as e:
        raise click.UsageError(str(e)) from e


def _load_registry(registry_path: Optional[str]) -> CurveRegistry:
    with usage_errors():
        return get_registry(registry_path)


def _manager(registry_path, cache_dir, connection, no_cache) -> Manager:
    with usage_errors():
        if no_cache:
            connection = 'sqlite://'
        return Manager.from_args(connection=connection, cache_dir=cache_dir, registry_path=registry_path)


def _finish(report: ReportDocument, fmt: str, started: float, manager: Optional[Manager] = None) -> None:
    """Write the report and exit with its status."""
    ctx = click.get_current_context()
    report.elapsed_seconds = time.perf_counter() - started
    if manager is not None:
        report.cache = manager.cache_summary()
    if isinstance(ctx.obj, dict):
        ctx.obj['report'] = report
    click.echo(report.render(fmt))
    if not report.passed:
        for failure in report.failures:
            logger.error('failed: %s %s', failure.name, failure.detail)
        ctx.exit(1)


@click.group()
@click.version_option()
def main():
    """Compute with mod-2 homology shadows of genus-5 Lefschetz fibrations."""


@main.command()
@common_options
def validate(fmt, registry_path, verbose):
    """Check every homology relation and pinned graph value against the registry."""
    started = time.perf_counter()
    registry = _load_registry(registry_path)
    report = ReportDocument('validate', {'registry': registry.source}, registry.version)

    with usage_errors():
        checks = validate_registry(registry)
        graphs = load_graphs(registry)
        document = load_graph_document()

    for check in checks:
        report.add_result(kind='relation', name=check.name, source=check.source, lhs=check.lhs, rhs=check.rhs,
                          passed=check.passed)
        report.check(f'relation {check.name}', check.passed, check.note or '')

    for name, graph in graphs.items():
        expected = document[name].get('expected', {})
        for value, expressions in ((1, expected.get('ones', [])), (0, expected.get('zeros', []))):
            for expression in expressions:
                with usage_errors():
                    actual = graph.chi(registry.evaluate(expression))
                report.add_result(kind='chi', name=f'{name}: {expression}', source='graphs', lhs=str(actual),
                                  rhs=str(value), passed=actual == value)
                report.check(f'chi {name} {expression}', actual == value, f'expected {value}, got {actual}')

    solutions = solve_stallings_class(registry, graphs=[graphs['gamma1'], graphs['gamma2']])
    rendered = [str(x) for x in solutions]
    report.add_result(kind='stallings', name='d', source='constraints', lhs=str(registry['d']),
                      rhs=' '.join(rendered), passed=registry['d'] in solutions)
    report.check('d satisfies its pairing and graph constraints', registry['d'] in solutions,
                 f'{len(solutions)} candidate classes')
    _finish(report, fmt, started)


@main.command()
@click.option('-g', '--graph', 'graph_name', default='gamma1', help='Pinned graph name')
@click.option('--vertices', help='Comma-separated vertex names instead of a pinned graph')
@click.argument('expressions', nargs=-1, required=True)
@common_options
def chi(graph_name, vertices, expressions, fmt, registry_path, verbose):
    """Evaluate the graph invariant on class expressions."""
    started = time.perf_counter()
    registry = _load_registry(registry_path)
    with usage_errors():
        graph = _resolve_graph(registry, graph_name, vertices)
        classes = [parse_class_expr(expression, registry) for expression in expressions]
    report = ReportDocument('chi', {'graph': graph.name or list(graph.names), 'expressions': list(expressions)},
                            registry.version)
    for expression, homology in zip(expressions, classes):
        report.add_result(expression=expression, **{'class': str(homology)}, chi=graph.chi(homology))
    _finish(report, fmt, started)


def _resolve_graph(registry: CurveRegistry, graph_name: str, vertices: Optional[str]):
    if vertices:
        return graph_from([name.strip() for name in vertices.split(',')], registry)
    graphs = load_graphs(registry)
    if graph_name not in graphs:
        raise UnknownNameError('graph', graph_name)
    return graphs[graph_name]


@main.command()
@click.option('-g', '--graph', 'graph_name', default='gamma1', help='Pinned graph name')
@common_options
def chitable(graph_name, fmt, registry_path, verbose):
    """Tabulate the graph invariant on every registry curve and on the host twists."""
    started = time.perf_counter()
    registry = _load_registry(registry_path)
    with usage_errors():
        graph = _resolve_graph(registry, graph_name, None)
        expected = load_graph_document()[graph_name].get('expected', {})
    report = ReportDocument('chitable', {'graph': graph_name}, registry.version)

    rows: List[Tuple[str, int]] = [(name, graph.chi(registry[name])) for name in registry]
    p, q = graph.host or (0, 0)
    for j in range(6):
        expression = f'Phi({p},{q})(B_{j})'
        rows.append((expression, graph.chi(registry.evaluate(expression))))
    for expression, value in rows:
        report.add_result(expression=expression, **{'class': str(registry.evaluate(expression))}, chi=value)

    for value, expressions in ((1, expected.get('ones', [])), (0, expected.get('zeros', []))):
        for expression in expressions:
            actual = graph.chi(registry.evaluate(expression))
            report.check(f'chi {expression} = {value}', actual == value, f'got {actual}')
    report.check('arf invariant is 1', arf(graph) == 1 == arf_by_majority(graph))
    _finish(report, fmt, started)


@main.command()
@click.option('--gens', 'gens', required=True, help='Factorization expression whose twists generate the group')
@click.option('--extra', multiple=True, help='Class expression of an extra twist to adjoin (repeatable)')
@click.option('--expect', type=int, help='Expected order')
@cache_options
@common_options
def order(gens, extra, expect, cache_dir, connection, no_cache, fmt, registry_path, verbose):
    """Compute the order of the mod-2 monodromy group of a factorization."""
    started = time.perf_counter()
    manager = _manager(registry_path, cache_dir, connection, no_cache)
    registry = manager.registry
    with usage_errors():
        w = parse_factorization_expr(gens, registry)
        extras = [parse_class_expr(expression, registry) for expression in extra]
    group = manager.group_of(w, extras)
    report = ReportDocument('order', {'gens': gens, 'extra': list(extra)}, registry.version)
    report.add_result(gens=gens, extra=' '.join(extra), letters=len(w), order=str(group.order),
                      orbit_sizes=group.orbit_sizes)
    report.check('order divides |Sp(10, 2)|', symplectic_group_order(registry.genus) % group.order == 0)
    if expect is not None:
        report.check(f'order is {expect}', group.order == expect, f'got {group.order}')
    _finish(report, fmt, started, manager)


@main.command()
@click.option('--gens', 'gens', required=True, help='Factorization expression whose twists generate the group')
@click.option('--target', required=True, help='Class expression of the twist to test')
@click.option('--expect', type=click.Choice(['true', 'false']), help='Expected answer')
@cache_options
@common_options
def member(gens, target, expect, cache_dir, connection, no_cache, fmt, registry_path, verbose):
    """Decide whether a twist lies in the mod-2 monodromy group of a factorization."""
    started = time.perf_counter()
    manager = _manager(registry_path, cache_dir, connection, no_cache)
    registry = manager.registry
    with usage_errors():
        w = parse_factorization_expr(gens, registry)
        homology = parse_class_expr(target, registry)
    group = manager.group_of(w)
    contained = group.contains(twist_matrix(homology))
    report = ReportDocument('member', {'gens': gens, 'target': target}, registry.version)
    report.add_result(gens=gens, target=target, **{'class': str(homology)}, contained=contained)
    if expect is not None:
        report.check(f'membership is {expect}', contained == (expect == 'true'))
    _finish(report, fmt, started, manager)


@main.command()
@click.argument('first')
@click.argument('second')
@click.option('--expect', type=click.Choice(['true', 'false']), help='Expected answer')
@cache_options
@common_options
def samegroup(first, second, expect, cache_dir, connection, no_cache, fmt, registry_path, verbose):
    """Decide whether two factorizations have the same mod-2 monodromy group."""
    started = time.perf_counter()
    manager = _manager(registry_path, cache_dir, connection, no_cache)
    registry = manager.registry
    with usage_errors():
        groups = [manager.group_of(parse_factorization_expr(text, registry)) for text in (first, second)]
    same = same_subgroup(*groups)
    report = ReportDocument('samegroup', {'first': first, 'second': second}, registry.version)
    for text, group in zip((first, second), groups):
        report.add_result(gens=text, order=str(group.order))
    report.add_result(gens='same', order=str(same).lower())
    if expect is not None:
        report.check(f'equality is {expect}', same == (expect == 'true'))
    _finish(report, fmt, started, manager)


@main.command()
@click.argument('pq', type=PAIR)
@click.argument('rs', type=PAIR)
@common_options
def distinguish(pq, rs, fmt, registry_path, verbose):
    """Try to certify that xi(p,q) and xi(r,s) are not Hurwitz equivalent."""
    started = time.perf_counter()
    registry = _load_registry(registry_path)
    verdict = distinguish_xi(pq, rs, registry=registry)
    report = ReportDocument('distinguish', {'pq': list(pq), 'rs': list(rs),
                                            'parities': [list(parity(*pq)), list(parity(*rs))]}, registry.version)
    for certificate in verdict.certificates:
        report.add_result(graph=certificate.graph.name, host=certificate.host, excluded=certificate.excluded_name,
                          **{'class': str(certificate.excluded)}, vertices=list(certificate.graph.names))
    if not verdict.certificates:
        report.add_result(graph=None, host=None, excluded=None, message=verdict.message)
    if parity(*pq) != parity(*rs):
        report.check('certificate found', verdict.distinguished, verdict.message)
    _finish(report, fmt, started)


@main.command()
@click.option('--host', 'host', type=PAIR, default='0,1', help='Parity (p,q) of the factorization to bound')
@click.option('--pool', help='Comma-separated curve names to search (default: the whole registry)')
@common_options
def certificate(host, pool, fmt, registry_path, verbose):
    """Search for a graph bounding xi(p,q) and excluding the c_2 and d twists."""
    started = time.perf_counter()
    registry = _load_registry(registry_path)
    p, q = host
    names = [name.strip() for name in pool.split(',')] if pool else list(registry)
    with usage_errors():
        ones = [registry[f'B_{j}'] for j in range(6)]
        ones += [registry.evaluate(f'Phi({p},{q})(B_{j})') for j in range(6)]
        ones += [registry['b_3'], registry["b_3'"], registry['a_3']]
        zeros = [registry['c_2'], registry['d']]
        found = find_certificate(names, ones, zeros, registry)

    report = ReportDocument('certificate', {'host': [p, q], 'pool': names}, registry.version)
    report.check('a certificate graph exists', found is not None)
    if found is not None:
        report.add_result(graph='found', vertices=list(found.names), edges=len(found.edges))
        report.check('found graph verifies', not verify_certificate(found, ones, zeros))

    for name, graph in load_graphs(registry).items():
        if graph.host == parity(p, q):
            failures = verify_certificate(graph, ones, zeros)
            report.add_result(graph=name, vertices=list(graph.names), edges=len(graph.edges))
            report.check(f'pinned {name} verifies', not failures, f'{len(failures)} failing classes')
    _finish(report, fmt, started)


@main.command()
@click.argument('name', type=click.Choice(sorted(TWIST_IDENTITIES) + ['all']))
@click.option('--krange', type=int, default=MCGZ2_KRANGE, show_default=True, help='Check k = 0..N')
@common_options
def identity(name, krange, fmt, registry_path, verbose):
    """Verify named twist identities through their mod-2 shadows."""
    started = time.perf_counter()
    registry = _load_registry(registry_path)
    names = sorted(TWIST_IDENTITIES) if name == 'all' else [name]
    report = ReportDocument('identity', {'name': name, 'krange': krange}, registry.version)
    for identity_name in names:
        results = sweep_twist_identity(identity_name, range(krange + 1), IDENTITY_PARAMETER_RANGE, registry)
        for (k, other), holds in results.items():
            report.add_result(identity=identity_name, k=k, other=other, holds=holds)
        failed = [key for key, holds in results.items() if not holds]
        report.check(identity_name, not failed, f'{len(results)} cases' + (f', failing {failed}' if failed else ''))
    _finish(report, fmt, started)


@main.command()
@click.argument('name', default='all')
@click.option('--params', 'params', type=PAIR, multiple=True, help='Parameters p,q (default: all of -1..1)')
@common_options
def script(name, params, fmt, registry_path, verbose):
    """Replay a shipped equivalence script (shift-p, shift-q, or all)."""
    started = time.perf_counter()
    registry = _load_registry(registry_path)
    names = list_scripts() if name == 'all' else [name]
    params = params or [(p, q) for p in (-1, 0, 1) for q in (-1, 0, 1)]
    report = ReportDocument('script', {'name': name, 'params': [list(pair) for pair in params]}, registry.version)
    for script_name in names:
        for p, q in params:
            label = f'{script_name}({p},{q})'
            try:
                with usage_errors():
                    outcome = run_equivalence_script(script_name, p, q, registry)
            except MCGz2Error as e:
                report.add_result(script=script_name, p=p, q=q, steps=None, matched=False, level=None)
                report.check(label, False, str(e))
                continue
            report.add_result(script=script_name, p=p, q=q, steps=len(outcome.steps), matched=outcome.matched,
                              level=outcome.level)
            failing = [step.step for step in outcome.steps if not step.passed]
            report.check(label, outcome.passed, f'failing steps {failing}' if failing else outcome.level)
    _finish(report, fmt, started)


@main.command()
@click.argument('expression')
@click.option('--expect', type=int, help='Expected Euler characteristic')
@common_options
def euler(expression, expect, fmt, registry_path, verbose):
    """Compute the Euler characteristic of the fibration of a factorization."""
    started = time.perf_counter()
    registry = _load_registry(registry_path)
    with usage_errors():
        w = parse_factorization_expr(expression, registry)
    value = euler_characteristic(w)
    report = ReportDocument('euler', {'expression': expression}, registry.version)
    report.add_result(expression=expression, letters=len(w), genus=w.genus, euler=value)
    report.check('mod-2 total monodromy is the identity', total_monodromy_sp2(w).is_identity())
    if expect is not None:
        report.check(f'euler characteristic is {expect}', value == expect, f'got {value}')
    _finish(report, fmt, started)


@main.command()
@click.option('--letters', 'expression', help='List the letters of a factorization expression instead')
@common_options
def registry(expression, fmt, registry_path, verbose):
    """Show the curve registry, or the letters of a factorization."""
    started = time.perf_counter()
    curves = _load_registry(registry_path)
    report = ReportDocument('registry', {'source': curves.source, 'letters': expression}, curves.version)
    if expression:
        with usage_errors():
            w = parse_factorization_expr(expression, curves)
        for row in describe_letters(w, curves):
            report.add_result(**row)
    else:
        for name, homology in curves.items():
            report.add_result(name=name, **{'class': str(homology)},
                              expression=' + '.join(curves.basis[i] for i in homology.vec.support()) or '0')
    _finish(report, fmt, started)


@main.command()
@common_options
def exclusions(fmt, registry_path, verbose):
    """Recompute which twists each pinned graph rules out."""
    started = time.perf_counter()
    registry = _load_registry(registry_path)
    with usage_errors():
        graphs = load_graphs(registry)
        document = load_graph_document()
    table = exclusion_table(graphs, j_range=range(6), registry=registry)
    report = ReportDocument('exclusions', {}, registry.version)
    for name, excluded in table.items():
        report.add_result(graph=name, host=list(graphs[name].host), excludes=excluded)
        pinned = document[name].get('excludes')
        if pinned is not None:
            report.check(f'{name} exclusions', excluded == pinned, f'got {excluded}')
        report.check(f'{name} bounds xi{graphs[name].host}',
                     all(graphs[name].chi(letter.homology) for letter in xi(*graphs[name].host, registry)))
    _finish(report, fmt, started)


@main.command()
@click.option('--seed', type=int, default=0, show_default=True, help='Random seed')
@click.option('--trials', type=int, default=100, show_default=True, help='Random move sequences per factorization')
@click.option('--moves', type=int, default=50, show_default=True, help='Maximum moves per sequence')
@click.option('--groups', type=int, default=0, show_default=True, help='Sequences whose group is also recomputed')
@cache_options
@common_options
def sweep(seed, trials, moves, groups, cache_dir, connection, no_cache, fmt, registry_path, verbose):
    """Run the randomized Hurwitz invariance and exhaustive quadratic-form checks."""
    started = time.perf_counter()
    manager = _manager(registry_path, cache_dir, connection, no_cache)
    registry = manager.registry
    rng = np.random.default_rng(seed)
    report = ReportDocument('sweep', {'seed': seed, 'trials': trials, 'moves': moves, 'groups': groups},
                            registry.version)

    for label, w in (('xi(0,0)', xi(0, 0, registry)), ('Y(0,0;1,0)', y_fact(0, 0, 1, 0, registry))):
        reference = total_monodromy_sp2(w)
        reference_group = manager.group_of(w) if groups else None
        preserved = 0
        for trial in range(trials):
            moved = random_moves(w, int(rng.integers(1, moves + 1)), rng, progress=verbose)
            if len(moved) == len(w) and total_monodromy_sp2(moved) == reference:
                preserved += 1
            if trial < groups and not same_subgroup(reference_group, manager.group_of(moved)):
                report.check(f'{label} group after trial {trial}', False)
        report.add_result(kind='hurwitz', name=label, value=f'{preserved}/{trials}')
        report.check(f'{label} Hurwitz invariance', preserved == trials)

    for name, graph in manager.graphs.items():
        results = {
            'quadratic refinement': quadratic_refinement_check(graph),
            'transvection invariance': transvection_invariance_check(graph, progress=verbose),
            'cell complex': cell_complex_check(graph),
        }
        for check_name, passed in results.items():
            report.add_result(kind='graph', name=f'{name} {check_name}', value=passed)
            report.check(f'{name} {check_name}', passed)
        report.add_result(kind='graph', name=f'{name} arf', value=arf(graph))
        report.check(f'{name} arf is 1', arf(graph) == 1 == arf_by_majority(graph))

    report.check('orthogonal group order matches the xi group',
                 orthogonal_group_order(registry.genus, -1) == XI_GROUP_ORDER)
    report.check('symplectic group order', symplectic_group_order(registry.genus) == SP10_ORDER)
    _finish(report, fmt, started, manager)


@main.command()
@click.option('--connection', help=f'SQLAlchemy connection. Defaults to {MCGZ2_CONNECTION}')
@click.option('--cache', 'cache_dir', type=click.Path(file_okay=False), help='Cache directory')
@click.option('-y', '--yes', is_flag=True)
def nuke(connection, cache_dir, yes):
    """Drop the stabilizer-chain cache."""
    if yes or click.confirm('Drop the chain cache?'):
        m = Manager.from_args(connection=connection, cache_dir=cache_dir, echo=True)
        m.drop_database()


def run_command(argv: Sequence[str]) -> Tuple[int, Optional[ReportDocument]]:
    """Run the command line in-process.

    :returns: the exit status and the report written, if any
    """
    obj: Dict[str, ReportDocument] = {}
    try:
        status = main.main(args=list(argv), prog_name='mcgz2', standalone_mode=False, obj=obj)
    except click.exceptions.Abort:
        status = 1
    except click.ClickException as e:
        e.show()
        status = e.exit_code
    return (status if isinstance(status, int) else 0), obj.get('report')


if __name__ == '__main__':
    main()
