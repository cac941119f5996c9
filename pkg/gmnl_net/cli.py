# -*- coding: utf-8 -*-
"""Интерфейс командной строки: подкоманды `kv`, `localbound`, `netgame`, `mincut`, `certify`,
`distill` и `verify`. Каждый отчёт начинается с заголовка, содержащего версию, зерно и полную
конфигурацию запуска; по этому заголовку (`--config`) запуск можно воспроизвести.

Коды возврата: 0 — успех, 1 — ошибка предметной области (некорректные входные данные, превышение
бюджета, неподдерживаемый случай), 2 — ошибка использования или конфигурации.
"""

import argparse
import csv
import io
import logging
import sys

from tabulate import tabulate

from . import __version__
from .bitcode import HadamardCode
from .certify import Certificate, certify_network_state, certify_star
from .games import (
    KVParams, ScoreMethod, Behavior,
    biseparable_bound_bruteforce, certify_cut_bound, chsh, classical_bound, exact_score, krep,
    local_bound_bruteforce, max_weight_strategy, mc_score, network_game, optimal_biproduct_behavior,
    optimal_local_strategies, pr_box, product_behavior, quantum_orbit_strategy_score,
    random_strategy, read_behavior, read_game, write_behavior,
)
from .netgraph import NetworkGraph, load_graph, min_cut
from .quantum import (
    EdgeAssignment, copies_for_success, coupon_collector_prob, coverage_frequency,
    entangled_link_probability, entanglement_fraction, extract_link_state, isotropic,
    isotropic_network_state, load_state, save_state, sigma_star, sigma_star_assignment,
    triangle_assignment,
)
from .utils import (
    LEVEL_PROGRESS, ROOT_SEED, CapacityError, InputError, ParametrizedObject, UnsupportedError,
    ensure_tuple, format_float, make_rng,
)
from .verification import run_checks

EXIT_SUCCESS = 0
EXIT_DOMAIN_ERROR = 1
EXIT_USAGE_ERROR = 2

CLI_COMPONENT = 10
CONFIG_PREFIX = '# config.'
VERBOSITY_LEVELS = (logging.WARNING, logging.INFO, LEVEL_PROGRESS, logging.DEBUG)

GAMES = {
    'chsh': chsh,
}


class UsageError(Exception):
    """Ошибка конфигурации запуска (неизвестный ключ, некорректное значение)."""


class RunConfig(ParametrizedObject):
    """Полная конфигурация запуска. Неизвестные ключи не допускаются."""
    unknown_parameter_policy = ParametrizedObject.UnknownParameterPolicy.RAISE
    parameters = {
        'command': None,
        'seed': ROOT_SEED,
        'out': '',
        'format': 'records',
        'samples': 100000,
        'workers': 1,
        'n': 16,
        'L': 1,
        'eta': 0.25,
        'strategy': 'maxweight',
        'exact': False,
        'quantum': False,
        'game': 'chsh',
        'repetitions': 1,
        'graph': 'triangle',
        'pr_mixture': 0.0,
        'behavior': '',
        'save_behavior': '',
        'state': '',
        'save_state': '',
        'fractions': '0.7',
        'd': 2,
        'k_max': 0,
        'optimize_fraction': False,
        'M': 2,
        'p': 0.9,
        'checks': '',
    }

    def validate(self):
        if self.command not in COMMANDS:
            raise InputError(f'Unknown command "{self.command}"')
        if self.format not in ('records', 'csv'):
            raise InputError(f'Unknown output format "{self.format}"')
        if not 0 <= self.seed < 1 << 64:
            raise InputError(f'Seed must be a 64-bit unsigned integer, got {self.seed}')

    def header(self):
        """Заголовок отчёта: версия и полная конфигурация (включая зерно)."""
        lines = [f'# gmnl_net {__version__}']
        lines += [f'{CONFIG_PREFIX}{name}={value}' for name, value in self.to_dict(full=True).items()]
        return lines


def parse_config_file(path):
    """Читает конфигурацию из заголовка отчёта. Значения приводятся к типам значений по
    умолчанию; неизвестный ключ считается ошибкой использования.
    """
    defaults = RunConfig._collect_parameters()
    result = {}
    try:
        with open(path, encoding='utf-8') as inp:
            lines = inp.read().splitlines()
    except OSError as exc:
        raise UsageError(f'Cannot read config "{path}": {exc}')
    for line in lines:
        if not line.startswith(CONFIG_PREFIX):
            continue
        key, separator, value = line[len(CONFIG_PREFIX):].partition('=')
        if not separator:
            raise UsageError(f'Malformed config line "{line}"')
        if key not in defaults:
            raise UsageError(f'Unknown config key "{key}"')
        result[key] = _convert(key, value, defaults[key])
    return result


def _convert(key, value, default):
    try:
        if isinstance(default, bool):
            if value not in ('True', 'False'):
                raise ValueError(value)
            return value == 'True'
        if isinstance(default, int):
            return int(value)
        if isinstance(default, float):
            return float(value)
    except ValueError:
        raise UsageError(f'Config key "{key}" has malformed value "{value}"')
    return value


def _floats(text):
    try:
        return [float(value) for value in ensure_tuple(text.replace(',', ' '))]
    except ValueError:
        raise InputError(f'Expected a list of numbers, got "{text}"')


def _code_order(n):
    if n < 2 or n & (n - 1):
        raise InputError(f'Word length n must be a power of two, got {n}')
    return n.bit_length() - 1


def _make_game(config):
    """Игра по имени (см. `GAMES`) либо из CSV-таблицы."""
    if config.game in GAMES:
        game = GAMES[config.game]()
    else:
        game = read_game(config.game)
    return krep(game, config.repetitions) if config.repetitions > 1 else game


def run_kv(config):
    params = KVParams(k=_code_order(config.n), L=config.L, eta=config.eta)
    code = HadamardCode(params.k)
    if config.strategy == 'maxweight':
        strategy_a = strategy_b = max_weight_strategy(code, params.L)
    elif config.strategy == 'random':
        strategy_a = random_strategy(code, params.L, make_rng(config.seed, CLI_COMPONENT, 0))
        strategy_b = random_strategy(code, params.L, make_rng(config.seed, CLI_COMPONENT, 1))
    else:
        raise InputError(f'Unknown strategy "{config.strategy}", use maxweight or random')
    if config.exact:
        estimate = exact_score(strategy_a, strategy_b, params)
    else:
        estimate = mc_score(strategy_a, strategy_b, params, config.samples, config.seed,
                            workers=config.workers)
    bound = classical_bound(params)
    records = [('n', params.n), ('L', params.L), ('eta', format_float(params.eta))]
    records += list(zip(('score', 'std_error', 'samples', 'method'), estimate.to_csv_row()))
    records += [('bound', format_float(bound)), ('ratio', format_float(estimate.value / bound))]
    if config.quantum:
        method = ScoreMethod.EXACT if config.exact else ScoreMethod.MONTE_CARLO
        quantum = quantum_orbit_strategy_score(params, method, samples=config.samples,
                                               seed=config.seed)
        records += list(zip(('quantum', 'quantum_std_error', 'quantum_samples', 'quantum_method'),
                            quantum.to_csv_row()))
    return records


def run_localbound(config):
    game = _make_game(config)
    optimum = optimal_local_strategies(game, workers=config.workers)
    return [
        ('game', config.game),
        ('repetitions', config.repetitions),
        ('local_bound', str(optimum.value)),
        ('local_bound_float', format_float(optimum.value)),
        ('alice', ' '.join(map(str, optimum.alice))),
        ('bob', ' '.join(map(str, optimum.bob))),
    ]


def run_netgame(config):
    graph = load_graph(config.graph)
    ng = network_game(_make_game(config), graph)
    bound = biseparable_bound_bruteforce(ng, workers=config.workers)
    capacity = min_cut(graph).capacity
    repetition_bound = local_bound_bruteforce(krep(ng.game, capacity))
    records = [
        ('graph', graph.summary()),
        ('capacity', capacity),
        ('biseparable_bound', str(bound.value)),
        ('bipartition', ' | '.join(' '.join(map(str, group)) for group in bound.bipartition)),
        ('repetition_bound', str(repetition_bound)),
    ]
    if config.behavior and config.pr_mixture > 0:
        raise InputError('Use either --behavior or --pr-mixture')
    behavior = None
    if config.behavior:
        behavior = read_behavior(config.behavior, ng)
        records.append(('behavior', config.behavior))
    elif config.pr_mixture > 0:
        if ng.game.alphabets != (2, 2, 2, 2):
            raise UnsupportedError('PR-box mixtures need a binary base game')
        group = bound.bipartition[0]
        behavior = Behavior.mixture(
            [product_behavior(ng, pr_box()), optimal_biproduct_behavior(ng, group)],
            [config.pr_mixture, 1 - config.pr_mixture],
        )
        records.append(('pr_mixture', format_float(config.pr_mixture)))
    if behavior is not None:
        if config.save_behavior:
            write_behavior(behavior, config.save_behavior, ng)
        verdict = certify_cut_bound(ng, behavior, repetition_bound=repetition_bound)
        records += [
            ('network_score', format_float(verdict.score)),
            ('margin', format_float(verdict.margin)),
            ('verdict', 'certified' if verdict.certified else 'not-certified'),
        ]
    return records


def run_mincut(config):
    graph = load_graph(config.graph)
    cut = min_cut(graph)
    return [
        ('graph', graph.summary()),
        ('capacity', cut.capacity),
        ('subset', ' '.join(map(str, sorted(cut.subset)))),
        ('cut_set', ' '.join(f'{i}-{j}' for i, j in cut.cut_set)),
    ]


def _assignment_for(graph, rho, d):
    """Привязка подсистем сохранённого состояния к рёбрам графа."""
    if rho.subsystems != 2 * len(graph.edges):
        raise InputError(f'{rho} does not fit the {len(graph.edges)} edges of {graph}')
    if graph == NetworkGraph.complete(3) and set(rho.dims) == {d + 1}:
        return triangle_assignment(d)
    leaves = len(graph.edges)
    if leaves > 1 and graph == NetworkGraph.star(leaves) and set(rho.dims) == {d + 1}:
        return sigma_star_assignment(leaves, d)
    return EdgeAssignment(graph, {
        edge: (2 * num, 2 * num + 1, rho.dims[2 * num]) for num, edge in enumerate(graph.edges)
    })


def run_certify(config):
    graph = load_graph(config.graph)
    if config.state:
        rho = load_state(config.state)
        assignment = _assignment_for(graph, rho, config.d)
    else:
        fractions = _floats(config.fractions)
        if len(fractions) == 1:
            fractions = fractions[0]
        rho, assignment = isotropic_network_state(graph, fractions, config.d)
    if config.save_state:
        save_state(rho, config.save_state)
    certificate = certify_network_state(
        rho, assignment,
        optimize=config.optimize_fraction,
        k_max=config.k_max or None,
        seed=config.seed,
    )
    return certificate


def run_distill(config):
    fractions = _floats(config.fractions)
    if len(fractions) == 1:
        fractions *= config.M
    if len(fractions) != config.M:
        raise InputError(f'Got {len(fractions)} fractions for {config.M} links')
    rho = sigma_star([isotropic(F, config.d) for F in fractions])
    copies = copies_for_success(config.M, config.p)
    coverage = coverage_frequency(config.M, copies, config.samples, config.seed)
    records = [
        ('M', config.M),
        ('d', config.d),
        ('copies_for_success', copies),
        ('coverage_probability', format_float(coupon_collector_prob(config.M, copies))),
        ('coverage_frequency', format_float(coverage.frequency)),
        ('coverage_std_error', format_float(coverage.std_error)),
    ]
    link_fractions = []
    if config.M == 1:
        link_fractions.append(entanglement_fraction(rho, seed=config.seed))
    else:
        assignment = sigma_star_assignment(config.M, config.d)
        for leaf, (sys_a, sys_b, _) in enumerate(assignment.mapping.values(), start=1):
            probability = entangled_link_probability(rho, sys_a, sys_b)
            link = extract_link_state(rho, sys_a, sys_b)
            link_fractions.append(entanglement_fraction(link, seed=config.seed))
            records.append((f'link.{leaf}.flag_probability', format_float(probability)))
    for leaf, value in enumerate(link_fractions, start=1):
        records.append((f'link.{leaf}.fraction', format_float(value)))
    certificate = certify_star(link_fractions, config.d, k_max=config.k_max or None)
    records += [tuple(line.split('=', 1)) for line in certificate.to_records().splitlines()]
    return records


def run_verify(config):
    numbers = {int(number) for number in ensure_tuple(config.checks)} or None
    return run_checks(config.seed, numbers)


COMMANDS = {
    'kv': run_kv,
    'localbound': run_localbound,
    'netgame': run_netgame,
    'mincut': run_mincut,
    'certify': run_certify,
    'distill': run_distill,
    'verify': run_verify,
}


def format_report(config, payload):
    """Формирует отчёт: заголовок с конфигурацией и содержательная часть в выбранном формате."""
    lines = config.header()
    if isinstance(payload, Certificate):
        if config.format == 'csv':
            lines.append(_csv_lines([Certificate.CSV_HEADER, payload.to_csv_row()]))
        else:
            lines.append(payload.to_records().rstrip('\n'))
    elif config.command == 'verify':
        rows = [(r.number, r.title, 'pass' if r.passed else 'FAIL', f'{r.seconds:.1f}', r.detail)
                for r in payload]
        headers = ('#', 'criterion', 'result', 'seconds', 'detail')
        if config.format == 'csv':
            lines.append(_csv_lines([headers] + rows))
        else:
            lines.append(tabulate(rows, headers=headers))
    elif config.format == 'csv':
        keys, values = zip(*payload)
        lines.append(_csv_lines([keys, values]))
    else:
        lines += [f'{key}={value}' for key, value in payload]
    return '\n'.join(lines) + '\n'


def _csv_lines(rows):
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator='\n')
    writer.writerows(rows)
    return buffer.getvalue().rstrip('\n')


def build_parser():
    parser = argparse.ArgumentParser(
        prog='gmnl', description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    parser.add_argument('--version', action='version', version=f'%(prog)s {__version__}')
    parser.add_argument('-v', '--verbose', action='count', default=0,
                        help='increase logging verbosity (-v info, -vv progress, -vvv debug)')
    parser.add_argument('--config', help='re-run the configuration embedded in a report')

    common = argparse.ArgumentParser(add_help=False, argument_default=argparse.SUPPRESS)
    common.add_argument('--seed', type=int, help='root seed (64-bit unsigned)')
    common.add_argument('--out', help='output file (default: stdout)')
    common.add_argument('--format', choices=('records', 'csv'), help='report format')
    common.add_argument('--workers', type=int, help='worker processes (capped by GMNL_THREADS)')

    subparsers = parser.add_subparsers(dest='command')
    kv = subparsers.add_parser('kv', parents=[common], argument_default=argparse.SUPPRESS,
                               help='score a Khot-Vishnoi strategy against the classical bound')
    kv.add_argument('--n', type=int, help='word length, a power of two')
    kv.add_argument('--L', type=int, help='parallel repetitions')
    kv.add_argument('--eta', type=float, help='noise probability in (0, 1/2)')
    kv.add_argument('--strategy', choices=('maxweight', 'random'))
    kv.add_argument('--exact', action='store_true', help='exact sum instead of Monte Carlo')
    kv.add_argument('--samples', type=int, help='Monte Carlo samples')
    kv.add_argument('--quantum', action='store_true', help='also score the orbit-basis strategy')

    localbound = subparsers.add_parser('localbound', parents=[common],
                                       argument_default=argparse.SUPPRESS,
                                       help='local bound of a game by brute force')
    localbound.add_argument('--game', help='game name or CSV table')
    localbound.add_argument('--repetitions', type=int, help='parallel repetitions')

    netgame = subparsers.add_parser('netgame', parents=[common],
                                    argument_default=argparse.SUPPRESS,
                                    help='biseparable bound of a network-extension game')
    netgame.add_argument('--game', help='base game name or CSV table')
    netgame.add_argument('--repetitions', type=int, help='parallel repetitions of the base game')
    netgame.add_argument('--graph', help='graph name or edge-list file')
    netgame.add_argument('--pr-mixture', dest='pr_mixture', type=float,
                         help='certify a PR-box / biproduct mixture with this PR weight')
    netgame.add_argument('--behavior', help='certify a network behavior read from a CSV table')
    netgame.add_argument('--save-behavior', dest='save_behavior',
                         help='write the certified behavior as a CSV table')

    mincut = subparsers.add_parser('mincut', parents=[common], argument_default=argparse.SUPPRESS,
                                   help='global minimum cut of a network graph')
    mincut.add_argument('--graph', help='graph name or edge-list file')

    certify = subparsers.add_parser('certify', parents=[common],
                                    argument_default=argparse.SUPPRESS,
                                    help='network-fraction certificate of a distributed state')
    certify.add_argument('--graph', help='graph name or edge-list file')
    certify.add_argument('--state', help='binary state file')
    certify.add_argument('--save-state', dest='save_state', help='write the certified state')
    certify.add_argument('--fractions', help='per-edge isotropic fractions (one or |E| values)')
    certify.add_argument('--d', type=int, help='local dimension of the edges')
    certify.add_argument('--k-max', dest='k_max', type=int, help='copy-number diagnostic range')
    certify.add_argument('--optimize-fraction', dest='optimize_fraction', action='store_true',
                         help='optimize the network fraction over local unitaries')

    distill = subparsers.add_parser('distill', parents=[common],
                                    argument_default=argparse.SUPPRESS,
                                    help='flag distillation on a star network')
    distill.add_argument('--M', type=int, help='number of links')
    distill.add_argument('--fractions', help='per-link isotropic fractions (one or M values)')
    distill.add_argument('--d', type=int, help='local dimension of the links')
    distill.add_argument('--p', type=float, help='target probability to cover every link')
    distill.add_argument('--samples', type=int, help='simulated protocol runs')
    distill.add_argument('--k-max', dest='k_max', type=int, help='copy-number diagnostic range')

    verify = subparsers.add_parser('verify', parents=[common], argument_default=argparse.SUPPRESS,
                                   help='run the acceptance checks')
    verify.add_argument('--checks', help='check numbers to run (default: all)')
    return parser


def run(argv=None):
    """Выполняет команду и возвращает код возврата."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE_ERROR
    logging.basicConfig(
        level=VERBOSITY_LEVELS[min(args.verbose, len(VERBOSITY_LEVELS) - 1)],
        format='%(levelname)s: %(message)s',
    )
    explicit = {
        name: value for name, value in vars(args).items()
        if name not in ('verbose', 'config') and value is not None
    }
    try:
        settings = parse_config_file(args.config) if args.config else {}
        settings.update(explicit)
        if 'command' not in settings:
            raise UsageError('No command given')
        config = RunConfig(**settings)
    except (UsageError, InputError) as exc:
        print(f'gmnl: usage error: {exc}', file=sys.stderr)
        return EXIT_USAGE_ERROR

    logging.info(f'Running {config}')
    try:
        payload = COMMANDS[config.command](config)
    except (InputError, CapacityError, UnsupportedError) as exc:
        print(f'gmnl: error: {exc}', file=sys.stderr)
        return EXIT_DOMAIN_ERROR
    report = format_report(config, payload)
    if config.out:
        with open(config.out, 'w', encoding='utf-8') as out:
            out.write(report)
    else:
        sys.stdout.write(report)
    if config.command == 'verify' and not all(result.passed for result in payload):
        return EXIT_DOMAIN_ERROR
    return EXIT_SUCCESS


def main():
    sys.exit(run())
