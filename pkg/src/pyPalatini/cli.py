"""Command-line front end: ``python -m pyPalatini <command> ...``.

Exit codes: 0 when everything checked passed, 1 when an algebraic identity failed or the library refused the input,
2 on usage errors, 3 when a probe flagged the instance as not general.
"""
import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Any, Optional

from jinja2 import Environment, FileSystemLoader
from pydantic import ValidationError

from .Palatini.Chow.degree import degree_table, scroll_invariants
from .Palatini.Fields.FieldCtx import FieldCtx
from .Palatini.Palatini import ExitCode, OutputFormat, TangentStatus, TOOLKIT_VERSION
from .Palatini.PalatiniError import PalatiniError
from .Palatini.Scroll.PalatiniInstance import PalatiniInstance, instance_random
from .Palatini.Scroll.genericity import genericity_check
from .Palatini.Scroll.slice import slice_degree_evidence
from .Palatini.Scroll.verification import check_pfaffian_identity, sample_records, verify_instance
from .Palatini.Tangent.hilbert import tangent_dimension
from .RunConfig import RunConfig


logger = logging.getLogger(__name__)


templates = Environment(
    loader=FileSystemLoader(Path(__file__).parent.joinpath('templates')),
    keep_trailing_newline=True,
)


LOG_LEVELS = [logging.WARNING, logging.INFO, logging.DEBUG]


def dump_json(obj: Any) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + '\n'


def _emit(text: str, out: Optional[Path]):
    if out is None:
        sys.stdout.write(text)
    else:
        out.write_text(text, encoding='utf-8')


def _load(cfg: RunConfig) -> PalatiniInstance:
    return PalatiniInstance.loads(cfg.instance.read_text(encoding='utf-8'))


# Commands

def cmd_gen(cfg: RunConfig) -> ExitCode:
    ctx = FieldCtx.prime(cfg.p) if cfg.e == 1 else FieldCtx.extension_of(cfg.p, cfg.e)
    inst = instance_random(cfg.m, cfg.k, ctx, cfg.seed)
    report = genericity_check(inst, cfg.trials, cfg.seed)
    summary = templates.get_template('gen_summary.txt.j2').render(
        inst=inst, inv=scroll_invariants(cfg.m, cfg.k), report=report, out=cfg.out,
    )
    if cfg.out is None:
        sys.stdout.write(inst.dumps() + '\n')
        sys.stderr.write(summary)
    else:
        cfg.out.write_text(inst.dumps() + '\n', encoding='utf-8')
        sys.stdout.write(summary)
    return ExitCode.OK


def cmd_degree(cfg: RunConfig) -> ExitCode:
    rows = degree_table(range(cfg.m_range[0], cfg.m_range[1] + 1), range(cfg.k_range[0], cfg.k_range[1] + 1))
    if cfg.format == OutputFormat.TSV:
        _emit(templates.get_template('degree_table.tsv.j2').render(rows=rows), cfg.out)
    else:
        _emit(dump_json([row._asdict() for row in rows]), cfg.out)
    return ExitCode.OK if all(row.agree for row in rows) else ExitCode.IDENTITY_FAILURE


def cmd_pfaffian(cfg: RunConfig) -> ExitCode:
    inst = _load(cfg)
    check = check_pfaffian_identity(inst, cfg.check_points, cfg.seed)
    _emit(dump_json({
        'pfaffian': inst.pf.to_json(),
        'check': check.model_dump(mode='json'),
        'instance_hash': inst.digest,
        'toolkit_version': TOOLKIT_VERSION,
    }), cfg.out)
    return ExitCode.OK if check.passed else ExitCode.IDENTITY_FAILURE


def cmd_verify(cfg: RunConfig) -> ExitCode:
    report = verify_instance(_load(cfg), cfg.trials, cfg.ext, cfg.seed)
    obj = report.model_dump(mode='json')
    obj.update(identities_ok=report.identities_ok, probes_clean=report.probes_clean, exit_code=int(report.exit_code))
    _emit(dump_json(obj), cfg.out)
    return report.exit_code


def cmd_sample(cfg: RunConfig) -> ExitCode:
    inst = _load(cfg)
    records = sample_records(inst, cfg.ext, cfg.count, cfg.seed)
    _emit(dump_json({
        'samples': [r.model_dump(mode='json') for r in records],
        'instance_hash': inst.digest,
        'toolkit_version': TOOLKIT_VERSION,
    }), cfg.out)
    return ExitCode.OK if all(r.verified for r in records) else ExitCode.IDENTITY_FAILURE


def cmd_tangent(cfg: RunConfig) -> ExitCode:
    inst = _load(cfg)
    generic = genericity_check(inst, cfg.trials, cfg.seed)
    report = tangent_dimension(inst, cfg.cap, budget_bytes=cfg.budget, report=generic)
    _emit(dump_json(report.model_dump(mode='json')), cfg.out)
    if report.status == TangentStatus.DISAGREE:
        return ExitCode.IDENTITY_FAILURE
    if report.status == TangentStatus.NO_STABILIZATION or not generic.passed:
        return ExitCode.PROBE_ANOMALY
    return ExitCode.OK


def cmd_slice(cfg: RunConfig) -> ExitCode:
    inst = _load(cfg)
    evidence = slice_degree_evidence(inst, cfg.max_ext, cfg.slices, cfg.seed)
    if cfg.format == OutputFormat.TSV:
        text = templates.get_template('slice_table.tsv.j2').render(
            evidence=evidence, degrees=range(1, cfg.max_ext + 1),
        )
    else:
        text = dump_json({
            'slices': [record._asdict() for record in evidence],
            'instance_hash': inst.digest,
            'toolkit_version': TOOLKIT_VERSION,
        })
    _emit(text, cfg.out)
    return ExitCode.OK


def cmd_invariants(cfg: RunConfig) -> ExitCode:
    _emit(dump_json(scroll_invariants(cfg.m, cfg.k)._asdict()), cfg.out)
    return ExitCode.OK


COMMANDS = {
    'gen': cmd_gen,
    'degree': cmd_degree,
    'pfaffian': cmd_pfaffian,
    'verify': cmd_verify,
    'sample': cmd_sample,
    'tangent': cmd_tangent,
    'slice': cmd_slice,
    'invariants': cmd_invariants,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--out', type=Path, help='output file (default stdout)')
    common.add_argument('--format', choices=[f.value for f in OutputFormat], default=OutputFormat.JSON.value)
    common.add_argument('-v', '--verbose', dest='verbosity', action='count', default=0)

    parser = argparse.ArgumentParser(prog='pyPalatini', description='Exact computations on Palatini scrolls.')
    sub = parser.add_subparsers(dest='command', required=True)

    gen = sub.add_parser('gen', parents=[common], help='generate a seeded random instance')
    gen.add_argument('--m', type=int, required=True)
    gen.add_argument('--k', type=int, required=True)
    gen.add_argument('--p', type=int)
    gen.add_argument('--e', type=int)
    gen.add_argument('--seed', type=int, required=True)
    gen.add_argument('--trials', type=int)

    degree = sub.add_parser('degree', parents=[common], help='degree formula against the Chern class computation')
    degree.add_argument('--m-range', required=True, help='A:B, inclusive')
    degree.add_argument('--k-range', required=True, help='A:B, inclusive')

    pfaffian = sub.add_parser('pfaffian', parents=[common], help='symbolic pfaffian of the pencil')
    pfaffian.add_argument('--instance', type=Path, required=True)
    pfaffian.add_argument('--check-points', type=int)
    pfaffian.add_argument('--seed', type=int)

    verify = sub.add_parser('verify', parents=[common], help='identities, genericity probes and incidence checks')
    verify.add_argument('--instance', type=Path, required=True)
    verify.add_argument('--trials', type=int)
    verify.add_argument('--ext', type=int)
    verify.add_argument('--seed', type=int)

    sample = sub.add_parser('sample', parents=[common], help='sample points of Y with their fibers')
    sample.add_argument('--instance', type=Path, required=True)
    sample.add_argument('--ext', type=int)
    sample.add_argument('--count', type=int)
    sample.add_argument('--seed', type=int)

    tangent = sub.add_parser('tangent', parents=[common], help='tangent space to the Hilbert scheme')
    tangent.add_argument('--instance', type=Path, required=True)
    tangent.add_argument('--cap', type=int)
    tangent.add_argument('--budget', type=int, help='memory ceiling in bytes')
    tangent.add_argument('--trials', type=int)
    tangent.add_argument('--seed', type=int)

    slice_ = sub.add_parser('slice', parents=[common], help='point counts of linear slices of a surface scroll')
    slice_.add_argument('--instance', type=Path, required=True)
    slice_.add_argument('--max-ext', type=int)
    slice_.add_argument('--slices', type=int)
    slice_.add_argument('--seed', type=int)

    invariants = sub.add_parser('invariants', parents=[common], help='closed-form invariants of a scroll')
    invariants.add_argument('--m', type=int, required=True)
    invariants.add_argument('--k', type=int, required=True)
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as ex:
        return ExitCode.OK if ex.code == 0 else ExitCode.USAGE
    try:
        cfg = RunConfig(**{key: value for key, value in vars(args).items() if value is not None})
    except ValidationError as ex:
        sys.stderr.write(f'{ex}\n')
        return ExitCode.USAGE
    logging.basicConfig(
        level=LOG_LEVELS[min(cfg.verbosity, len(LOG_LEVELS) - 1)],
        format='%(asctime)s %(levelname)s %(name)s: %(message)s',
        stream=sys.stderr,
    )
    try:
        return COMMANDS[cfg.command](cfg)
    except OSError as ex:
        sys.stderr.write(f'{ex}\n')
        return ExitCode.USAGE
    except PalatiniError as ex:
        logger.debug('Command %s failed', cfg.command, exc_info=True)
        sys.stderr.write(f'{type(ex).__name__}: {ex}\n')
        return ExitCode.IDENTITY_FAILURE
