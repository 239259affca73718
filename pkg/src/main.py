#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
骨架覆盖工具箱
Skeletal Toolkit - Main Entry Point

子命令：construct, verify, oracle, exponents, shadow, digits, cantor, report。
标准输出只写数据（JSON / CSV / 文本格式），进度与日志写到标准错误。

退出码：0 成功；1 验证未通过；2 用法或输入错误；3 超出点数/节点预算。

JSON 键：
  construct  shape, n, k, p, i, sizeB, sizeS, scale
  verify     mode, satisfied, witnesses[{point, radius}], failures
  oracle     min_size, r_max, nodes_explored, optimal, assignment, lower_bound
  exponents  n, k, beta, orthoplex_exponent, f_at_zero [+ converged, converged_at, tolerance, trace]
有理数一律写成 "num/den" 字符串。
"""

import argparse
import logging
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence

from tqdm import tqdm

from cantor.box_counting import box_count, dimension_estimate
from cantor.cantor_lab import cantor_experiment, cover_box_comparison, truncated_sum, vertex_stages
from constructions.construction_builder import SHAPES, ConstructionBuilder, scaling_study
from digits.digit_set import build_digit_set, find_radius
from digits.multiscale import build_multiscale_set, cover_profile, find_radius_multiscale, interval_cover_count
from exponents.exponent_algebra import (EXPONENT_TABLE_HEADER, beta, exponent_table, f_alpha, iterate_f,
                                        orthoplex_exponent, vertex_lower_bound)
from lattice.cover_verifier import CoverVerifier
from lattice.point_set import PointSet, read_point_set, write_point_set
from oracle.min_cover_search import CoverInstance, MinCoverSearch, grid_prefix_instances, min_cover_sweep
from shadows.kruskal_katona import (cascade_representation, colex_segment, domination_sweep, exact_shadow,
                                    kk_shadow_bound, lovasz_root, lovasz_shadow_bound, read_family, write_family)
from utils.config import config
from utils.errors import BudgetExceededError
from utils.formats import (dump_json, rational_str, read_integer_set, read_rationals, write_csv,
                           write_integer_set, write_rationals)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_UNSATISFIED = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3

# report 子命令默认的规模律研究：(shape, n, k, bases)
DEFAULT_STUDIES = [
    ('skeleton', 2, 0, list(range(2, 7))),
    ('skeleton', 2, 1, list(range(2, 7))),
    ('skeleton', 2, 0, list(range(8, 13))),
    ('orthoplex', 2, None, list(range(2, 6))),
]


@dataclass
class RunConfig:
    """一次调用的参数快照"""
    command: str
    action: Optional[str]
    point_cap: int
    node_budget: int
    threads: int
    out: Optional[Path] = None
    verbose: bool = False
    options: Dict[str, Any] = field(default_factory=dict)

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> "RunConfig":
        point_cap = args.point_cap if args.point_cap is not None else config.get('point_cap')
        node_budget = args.node_budget if args.node_budget is not None else config.get('node_budget')
        threads = args.threads if args.threads is not None else config.threads()
        for name, value in (('--point-cap', point_cap), ('--node-budget', node_budget), ('--threads', threads)):
            if value < 1:
                raise ValueError(f"{name} 必须为正整数: {value}")
        if args.out is not None and not Path(args.out).parent.exists():
            raise ValueError(f"输出目录不存在: {Path(args.out).parent}")
        return cls(args.command, getattr(args, 'action', None), point_cap, node_budget, threads,
                   Path(args.out) if args.out else None, args.verbose, dict(vars(args)))

    def save(self, path: Path):
        """把生效的点数上限、节点预算与线程数写入 JSON 配置文件"""
        config.set('point_cap', self.point_cap)
        config.set('node_budget', self.node_budget)
        config.set('threads', self.threads)
        config.config_file = Path(path)
        config.save_config()
        logger.info(f"配置已保存到 {path}")


class ProgressBar:
    """把 progress_callback(percent, message) 接到 stderr 上的 tqdm 进度条"""

    def __init__(self, description: str):
        self.bar = tqdm(total=100, desc=description, file=sys.stderr, leave=False, disable=None)

    def __call__(self, percent: int, message: str):
        self.bar.n = min(100, max(0, percent))
        self.bar.set_postfix_str(message, refresh=False)
        self.bar.refresh()

    def __enter__(self) -> "ProgressBar":
        return self

    def __exit__(self, *exc):
        self.bar.close()


# ----------------------------------------------------------------------
# 参数解析
# ----------------------------------------------------------------------

def parse_bases(text: str) -> List[int]:
    """'2-6' 或 '2,3,5' 形式的底数列表"""
    if '-' in text:
        lo, hi = text.split('-', 1)
        return list(range(int(lo), int(hi) + 1))
    return [int(part) for part in text.split(',') if part]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog='skeletal',
        description=__doc__,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    parser.add_argument('--point-cap', type=int, default=None, help='构造与和集的点数上限')
    parser.add_argument('--node-budget', type=int, default=None, help='最小覆盖搜索的节点预算')
    parser.add_argument('--threads', type=int, default=None, help='并行线程数（覆盖 SKELETAL_THREADS）')
    parser.add_argument('--config', default=None, help='JSON 配置文件')
    parser.add_argument('--save-config', default=None, help='把本次生效的配置写入该 JSON 文件')
    parser.add_argument('--out', default=None, help='主输出文件，默认标准输出')
    parser.add_argument('-v', '--verbose', action='store_true', help='输出 INFO 级日志')
    commands = parser.add_subparsers(dest='command', required=True)

    # construct
    p = commands.add_parser('construct', help='构造 (B, S)')
    p.add_argument('--shape', choices=SHAPES, required=True)
    p.add_argument('--n', type=int, required=True)
    p.add_argument('--k', type=int, default=0, help='骨架阶数；nl 构造中为 ℓ')
    p.add_argument('--ell', type=int, default=None, help='nl 构造的 ℓ（优先于 --k）')
    p.add_argument('--p', type=int, required=True)
    p.add_argument('--out-b', default=None)
    p.add_argument('--out-s', default=None)
    p.add_argument('--verify', action='store_true', help='构造后立即验证')

    # verify
    p = commands.add_parser('verify', help='验证覆盖条件')
    p.add_argument('--mode', choices=SHAPES, required=True)
    p.add_argument('--k', type=int, default=0)
    p.add_argument('--ell', type=int, default=None)
    p.add_argument('--b', required=True, help='B（nl 模式为 A）点集文件')
    p.add_argument('--s', required=True, help='S 点集文件')

    # oracle
    p = commands.add_parser('oracle', help='最小覆盖精确搜索')
    actions = p.add_subparsers(dest='action', required=True)
    q = actions.add_parser('min-cover')
    q.add_argument('--s', required=True)
    q.add_argument('--shape', choices=('vertex', 'skeleton', 'orthoplex'), default='vertex')
    q.add_argument('--r-max', type=int, default=3)
    q.add_argument('--k', type=int, default=0)
    q = actions.add_parser('sweep')
    q.add_argument('--line', type=int, default=None, help='Z¹ 网格线前缀 {0..m-1}，m = 1..LINE')
    q.add_argument('--grid', type=int, default=None, help='[0, GRID-1]² 的全部子集')
    q.add_argument('--max-size', type=int, default=3)
    q.add_argument('--shape', choices=('vertex', 'orthoplex'), default='vertex')
    q.add_argument('--r-max', type=int, default=3)

    # exponents
    p = commands.add_parser('exponents', help='指数代数')
    p.add_argument('--n', type=int, default=None)
    p.add_argument('--k', type=int, default=0)
    p.add_argument('--iterate', action='store_true')
    p.add_argument('--tol', type=float, default=None)
    p.add_argument('--max-steps', type=int, default=None)
    p.add_argument('--table', type=int, default=None, help='输出 n <= TABLE 的 CSV 表')

    # shadow
    p = commands.add_parser('shadow', help='Kruskal-Katona 影子')
    actions = p.add_subparsers(dest='action', required=True)
    q = actions.add_parser('bounds')
    q.add_argument('--m', type=int, required=True)
    q.add_argument('--b', type=int, required=True)
    q.add_argument('--c', type=int, default=1)
    q = actions.add_parser('exact')
    q.add_argument('--family', required=True)
    q.add_argument('--c', type=int, default=1)
    q.add_argument('--ground', type=int, default=None)
    q = actions.add_parser('colex')
    q.add_argument('--m', type=int, required=True)
    q.add_argument('--b', type=int, required=True)
    q = actions.add_parser('check')
    q.add_argument('--ground', type=int, default=5)
    q.add_argument('--arity', type=int, default=2)
    q.add_argument('--c', type=int, default=1)

    # digits
    p = commands.add_parser('digits', help='数位集合')
    actions = p.add_subparsers(dest='action', required=True)
    q = actions.add_parser('dump')
    q.add_argument('--i', type=int, required=True)
    q.add_argument('--n', type=int, required=True)
    q = actions.add_parser('multiscale')
    q.add_argument('--p', type=int, required=True)
    q.add_argument('--n', type=int, required=True)
    q = actions.add_parser('radius')
    q.add_argument('--x', type=int, nargs='+', required=True)
    q.add_argument('--i', type=int, default=None)
    q.add_argument('--p', type=int, default=None, help='给出时在 A_N 中求半径')
    q = actions.add_parser('cover')
    q.add_argument('--p', type=int, default=None)
    q.add_argument('--n', type=int, default=None)
    q.add_argument('--values', default=None, help='整数集合文件')
    q.add_argument('--r', type=int, default=None)

    # cantor
    p = commands.add_parser('cantor', help='Cantor 型和集')
    actions = p.add_subparsers(dest='action', required=True)
    for name in ('stages', 'sum', 'fit'):
        q = actions.add_parser(name)
        q.add_argument('--n', type=int, default=1)
        q.add_argument('--t', type=Fraction, default=Fraction(1))
        q.add_argument('--depth', type=int, default=None)
        if name == 'sum':
            q.add_argument('--which', choices=('T', 'A'), default='T')
        if name == 'fit':
            q.add_argument('--points', default=None, help='有理数点集文件；省略时做顶点构造实验')
            q.add_argument('--scales', type=Fraction, nargs='+', default=None)
    q = actions.add_parser('boxcount')
    q.add_argument('--points', required=True)
    q.add_argument('--scales', type=Fraction, nargs='+', required=True)
    q = actions.add_parser('compare', help='A_N 上区间覆盖数与盒计数的比较')
    q.add_argument('--p', type=int, required=True)
    q.add_argument('--n', type=int, default=1)

    # report
    p = commands.add_parser('report', help='规模律研究')
    p.add_argument('--shape', choices=SHAPES, default=None)
    p.add_argument('--n', type=int, default=2)
    p.add_argument('--k', type=int, default=0)
    p.add_argument('--bases', type=parse_bases, default=None)
    p.add_argument('--json', default=None, help='斜率 JSON 输出文件')
    return parser


# ----------------------------------------------------------------------
# 子命令
# ----------------------------------------------------------------------

def cmd_construct(args, cfg: RunConfig) -> int:
    order = args.ell if args.shape == 'nl' and args.ell is not None else args.k
    result = ConstructionBuilder(cfg.point_cap).build(args.shape, args.n, order, args.p)
    label = f"{args.shape} n={args.n} k={result.k} p={args.p} i={result.i}"
    if args.out_b:
        write_point_set(result.B, args.out_b, header=f"{label} B")
    if args.out_s:
        write_point_set(result.S, args.out_s, header=f"{label} S")
    summary = result.summary()
    code = EXIT_OK
    if args.verify:
        with ProgressBar('验证') as bar:
            report = _verify(args.shape, result.B, result.S, result.k, result.k, cfg.threads, bar)
        summary['satisfied'] = report.satisfied
        if not report.satisfied:
            code = EXIT_UNSATISFIED
    dump_json(summary, cfg.out)
    return code


def _verify(mode: str, B: PointSet, S: PointSet, k: Optional[int], ell: Optional[int],
            threads: int, progress: Optional[Callable] = None):
    verifier = CoverVerifier(max_workers=threads)
    if mode == 'skeleton':
        return verifier.verify_cover(B, S, k, progress)
    if mode == 'nl':
        return verifier.verify_nl_condition(B, S, ell, progress)
    return verifier.verify_orthoplex_cover(B, S, progress)


def cmd_verify(args, cfg: RunConfig) -> int:
    B = read_point_set(args.b)
    S = read_point_set(args.s)
    with ProgressBar('验证') as bar:
        report = _verify(args.mode, B, S, args.k, args.ell, cfg.threads, bar)
    payload = {'mode': args.mode}
    payload.update(report.to_dict())
    dump_json(payload, cfg.out)
    return EXIT_OK if report.satisfied else EXIT_UNSATISFIED


def _grid_instances(side: int, max_size: int, shape: str, r_max: int) -> List[CoverInstance]:
    cells = list(product(range(side), repeat=2))
    instances = []
    for size in range(1, max_size + 1):
        for subset in combinations(cells, size):
            instances.append(CoverInstance(PointSet(subset, 2), shape, r_max))
    return instances


def cmd_oracle(args, cfg: RunConfig) -> int:
    if args.action == 'min-cover':
        instance = CoverInstance(read_point_set(args.s), args.shape, args.r_max, args.k)
        result = MinCoverSearch(cfg.node_budget).run(instance)
        payload = result.to_dict()
        payload['lower_bound'] = instance.lower_bound()
        dump_json(payload, cfg.out)
        return EXIT_OK

    if args.line is not None:
        instances = grid_prefix_instances(args.line, args.r_max, args.shape)
    elif args.grid is not None:
        instances = _grid_instances(args.grid, args.max_size, args.shape, args.r_max)
    else:
        raise ValueError("sweep 需要 --line 或 --grid")
    with ProgressBar('搜索') as bar:
        rows = min_cover_sweep(instances, cfg.node_budget, cfg.threads, bar)

    code = EXIT_OK
    dim = instances[0].S.dim if instances else 1
    for row in rows:
        limit = vertex_lower_bound(dim, row['size_s'])
        if row['min_size'] < limit:
            logger.warning(f"|S|={row['size_s']} 的最小覆盖 {row['min_size']} 低于下界 {limit:.3f}")
            code = EXIT_UNSATISFIED
    header = ['size_s', 'min_size', 'r_max', 'nodes_explored']
    write_csv(header, ([row[key] for key in header] for row in rows), cfg.out)
    return code


def cmd_exponents(args, cfg: RunConfig) -> int:
    if args.table is not None:
        write_csv(EXPONENT_TABLE_HEADER, exponent_table(args.table, args.tol, args.max_steps), cfg.out)
        return EXIT_OK
    if args.n is None:
        raise ValueError("需要 --n 或 --table")
    payload: Dict[str, Any] = {
        'n': args.n,
        'k': args.k,
        'beta': rational_str(beta(args.n, args.k)),
        'orthoplex_exponent': rational_str(orthoplex_exponent(args.n)),
        'f_at_zero': rational_str(f_alpha(args.n, args.k, 0)),
    }
    if args.iterate:
        payload.update(iterate_f(args.n, args.k, args.tol, args.max_steps).to_dict())
    dump_json(payload, cfg.out)
    return EXIT_OK


def cmd_shadow(args, cfg: RunConfig) -> int:
    if args.action == 'bounds':
        if not 0 < args.c < args.b:
            raise ValueError(f"影子阶数必须满足 0 < c < b: c={args.c}, b={args.b}")
        payload = {
            'm': args.m,
            'b': args.b,
            'c': args.c,
            'cascade': list(cascade_representation(args.m, args.b).indices),
            'kk': kk_shadow_bound(args.m, args.b, args.c),
            'lovasz': lovasz_shadow_bound(args.m, args.b, args.c),
            'lovasz_root': lovasz_root(args.m, args.b),
        }
        dump_json(payload, cfg.out)
    elif args.action == 'exact':
        family = read_family(args.family, args.ground)
        write_family(exact_shadow(family, args.c), cfg.out)
    elif args.action == 'colex':
        write_family(colex_segment(args.m, args.b), cfg.out)
    else:
        totals = domination_sweep(args.ground, args.arity, args.c, cfg.threads)
        dump_json(totals, cfg.out)
        if totals['violations']:
            return EXIT_UNSATISFIED
    return EXIT_OK


def cmd_digits(args, cfg: RunConfig) -> int:
    if args.action == 'dump':
        write_integer_set(build_digit_set(args.i, args.n).members, cfg.out)
    elif args.action == 'multiscale':
        write_integer_set(build_multiscale_set(args.p, args.n, cfg.point_cap).members, cfg.out)
    elif args.action == 'radius':
        n = len(args.x)
        if args.p is not None:
            r = find_radius_multiscale(args.x, args.p, n)
            members = build_multiscale_set(args.p, n, cfg.point_cap).members
        elif args.i is not None:
            r = find_radius(args.x, args.i)
            members = build_digit_set(args.i, n).members
        else:
            raise ValueError("radius 需要 --i 或 --p")
        ok = all(x + r in members and x - r in members for x in args.x)
        dump_json({'x': args.x, 'radius': r, 'verified': ok}, cfg.out)
        return EXIT_OK if ok else EXIT_UNSATISFIED
    else:
        if args.values is not None:
            if args.r is None:
                raise ValueError("cover --values 需要 --r")
            dump_json({'R': args.r, 'count': interval_cover_count(read_integer_set(args.values), args.r)},
                      cfg.out)
            return EXIT_OK
        if args.p is None or args.n is None:
            raise ValueError("cover 需要 --p 与 --n，或 --values 与 --r")
        rows = cover_profile(args.p, args.n, cfg.point_cap)
        header = ['j', 'R', 'count', 'envelope', 'in_domain']
        write_csv(header, ([row[key] for key in header] for row in rows), cfg.out)
        if any(row['in_domain'] and row['count'] > row['envelope'] for row in rows):
            return EXIT_UNSATISFIED
    return EXIT_OK


def cmd_cantor(args, cfg: RunConfig) -> int:
    if args.action == 'stages':
        a_spec, t_spec = vertex_stages(args.n, args.t, args.depth)
        dump_json({'A': a_spec.to_dict(), 'T': t_spec.to_dict()}, cfg.out)
    elif args.action == 'sum':
        a_spec, t_spec = vertex_stages(args.n, args.t, args.depth)
        total = truncated_sum(t_spec if args.which == 'T' else a_spec, point_cap=cfg.point_cap)
        write_rationals(total.points, cfg.out)
    elif args.action == 'boxcount':
        points = read_rationals(args.points)
        rows = [[s.numerator, s.denominator, box_count(points, s)] for s in args.scales]
        write_csv(['scale_num', 'scale_den', 'count'], rows, cfg.out)
    elif args.action == 'compare':
        rows = cover_box_comparison(args.p, args.n, cfg.point_cap)
        header = ['R', 'cover', 'boxes', 'within_factor_two']
        write_csv(header, ([row[key] for key in header] for row in rows), cfg.out)
        if not all(row['within_factor_two'] for row in rows):
            return EXIT_UNSATISFIED
    elif args.points is not None:
        if not args.scales:
            raise ValueError("fit --points 需要 --scales")
        dump_json(dimension_estimate(read_rationals(args.points), args.scales).to_dict(), cfg.out)
    else:
        dump_json(cantor_experiment(args.n, args.t, args.depth, cfg.point_cap), cfg.out)
    return EXIT_OK


def cmd_report(args, cfg: RunConfig) -> int:
    if args.shape is not None:
        bases = args.bases or list(range(2, 7))
        studies = [(args.shape, args.n, None if args.shape == 'orthoplex' else args.k, bases)]
    else:
        studies = DEFAULT_STUDIES
    rows, slopes = [], []
    with ProgressBar('规模律') as bar:
        for shape, n, k, bases in studies:
            study_rows, slope = scaling_study(shape, n, k, bases, bar)
            rows.extend([shape, n, '' if k is None else k, i, s, b] for i, s, b in study_rows)
            slopes.append({'shape': shape, 'n': n, 'k': k, 'bases': bases, 'slope': slope})
    write_csv(['shape', 'n', 'k', 'i', 'size_s', 'size_b'], rows, cfg.out)
    if args.json:
        dump_json(slopes, args.json)
    return EXIT_OK


HANDLERS: Dict[str, Callable[[argparse.Namespace, RunConfig], int]] = {
    'construct': cmd_construct,
    'verify': cmd_verify,
    'oracle': cmd_oracle,
    'exponents': cmd_exponents,
    'shadow': cmd_shadow,
    'digits': cmd_digits,
    'cantor': cmd_cantor,
    'report': cmd_report,
}


def run(argv: Optional[Sequence[str]] = None) -> int:
    """
    执行一次命令

    Args:
        argv: 命令行参数（不含程序名）

    Returns:
        退出码
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK

    logging.basicConfig(
        stream=sys.stderr,
        level=logging.INFO if args.verbose else logging.WARNING,
        format='%(levelname)s %(name)s: %(message)s',
    )
    try:
        if args.config:
            config.config_file = Path(args.config)
            config.load_config()
        cfg = RunConfig.from_args(args)
        if args.save_config:
            cfg.save(Path(args.save_config))
        return HANDLERS[args.command](args, cfg)
    except BudgetExceededError as e:
        logger.error(f"超出预算: {e}")
        partial = getattr(e.partial, 'to_dict', None)
        if partial is not None:
            dump_json(partial(), args.out)
        return EXIT_BUDGET
    except (ValueError, OSError) as e:
        logger.error(f"运行错误: {e}")
        return EXIT_USAGE


def main():
    """主函数"""
    sys.exit(run())


if __name__ == "__main__":
    main()
