import logging
import math
import sys
from pathlib import Path

import click

from src.BoundSearch import LPProblem, search_bound
from src.Certificates import LINT, combined_exit_code, parse_certificate, verify_certificate
from src.CorpusManager import CorpusManager
from src.IntersectionPairing import b_sum, d_divisor, intersect, pairing_matrix, relation_kernel
from src.KapranovBasis import basis_extension_check, bc_product_pattern, keel_independence_check, matrix_m
from src.KeelCertificates import prove_keel_coefficient
from src.LPSolver import OPTIMAL
from src.M07Basis import basis_singularity_test, degenerate_rank, p_matrix_closed_det, to_coords
from src.ModuliLabels import BoundaryLabel, enumerate_boundary, enumerate_fcurves
from src.TheoremDriver import verify_entries, verify_theorem_m07
from src.click_validators import (
    validate_assumptions,
    validate_curve,
    validate_curve_type,
    validate_index_set,
    validate_normalizations,
    validate_params,
    validate_point_list,
    validate_target,
)
from src.configs.BasisParams import ParamTriple
from src.configs.RunConfig import RunConfig
from src.const import EXIT_BOUND_GAP, EXIT_DOMAIN, EXIT_LINT, EXIT_PASS, EXIT_RESIDUAL, EXIT_USAGE, M07_POINTS
from src.exceptions import CertificateError, FnefError
from src.reporting import FORMATS, TEXT, emit

logger = logging.getLogger(__name__)


@click.group()
@click.option('--format', 'fmt', type=click.Choice(FORMATS), default=TEXT, help='Report format')
@click.option('-v', '--verbose', count=True, help='Log to stderr; repeat for debug output')
@click.pass_context
def cli(ctx, fmt: str, verbose: int):
    """Exact checks for F-nef divisors on moduli of pointed rational curves"""
    ctx.ensure_object(dict)
    ctx.obj['FORMAT'] = fmt
    if verbose:
        logging.basicConfig(level=logging.INFO if verbose == 1 else logging.DEBUG, stream=sys.stderr,
                            format='%(levelname)s %(name)s: %(message)s')


def _n_option(default: int = M07_POINTS):
    return click.option('--n', 'n', type=click.IntRange(4, 12), default=default, show_default=True,
                        help='Number of marked points')


@cli.command()
@_n_option()
@click.pass_context
def rank(ctx, n: int):
    """Boundary and F-curve counts, pairing rank and relation kernel dimension"""
    emit({
        'n': n,
        'boundary': len(enumerate_boundary(n)),
        'fcurves': len(enumerate_fcurves(n)),
        'rank': pairing_matrix(n).rank(),
        'kernel': len(relation_kernel(n)),
    }, ctx.obj['FORMAT'])
    ctx.exit(EXIT_PASS)


@cli.command(name='intersect')
@click.option('--curve', required=True, callback=validate_curve, help='F-curve such as C(1|2|3|4,5,6,7)')
@click.option('--divisor', required=True, callback=validate_index_set, help='Boundary divisor such as D{1,2}')
@click.pass_context
def intersect_cmd(ctx, curve, divisor):
    """Pair one F-curve with one boundary divisor"""
    label = BoundaryLabel.of(curve.n, divisor)
    emit({'curve': str(curve), 'divisor': str(label), 'value': intersect(curve, label)}, ctx.obj['FORMAT'])
    ctx.exit(EXIT_PASS)


@cli.command(name='keel-cert')
@_n_option()
@click.option('--J', 'points', required=True, callback=validate_point_list, help='Index set such as 1,2')
@click.option('--type', 'curve_type', required=True, callback=validate_curve_type, help='Curve type such as 1,1,1,2')
@click.pass_context
def keel_cert(ctx, n: int, points, curve_type):
    """Check the Keel coefficient identity for one index set and curve type"""
    report = prove_keel_coefficient(BoundaryLabel.of(n, points), curve_type)
    emit(report.to_dict(), ctx.obj['FORMAT'])
    ctx.exit(EXIT_PASS if report.passed else EXIT_RESIDUAL)


@cli.command()
@_n_option()
@click.pass_context
def kapranov(ctx, n: int):
    """Determinant of the Kapranov pairing matrix and the basis checks"""
    _, det = matrix_m(n)
    report = {
        'n': n,
        'det': det,
        'expected_magnitude': 2 ** math.comb(n - 1, 4),
        'bc_pattern': bc_product_pattern(n),
        'keel_independent': keel_independence_check(n),
        'basis_extension': basis_extension_check(n),
    }
    emit(report, ctx.obj['FORMAT'])
    passed = report['bc_pattern'] and report['keel_independent'] and report['basis_extension']
    ctx.exit(EXIT_PASS if passed else EXIT_RESIDUAL)


@cli.command()
@click.option('--params', default='3,5,9', show_default=True, callback=validate_params,
              help='alpha,lambda,mu of the pencil P_i')
@click.pass_context
def basis(ctx, params: ParamTriple):
    """Singularity test of the {S_I, P_i} candidate and the D_1, B_2, B_3 coordinates"""
    singular = basis_singularity_test(params)
    report = {
        'params': params.to_dict(),
        'singular': singular,
        'p_det': p_matrix_closed_det(params),
        'p_rank': degenerate_rank(params),
    }
    if not singular:
        for name, vector in (('D1', d_divisor(M07_POINTS, 1)), ('B2', b_sum(M07_POINTS, 2)),
                             ('B3', b_sum(M07_POINTS, 3))):
            report[name] = to_coords(vector, params).dump_lines()
    emit(report, ctx.obj['FORMAT'])
    ctx.exit(EXIT_PASS)


@cli.command()
@click.option('--file', 'path', required=True, type=click.Path(exists=True, dir_okay=False, path_type=Path))
@click.pass_context
def verify(ctx, path: Path):
    """Verify one certificate file"""
    try:
        certificate = parse_certificate(path.read_text(), cert_id=path.stem)
    except CertificateError as e:
        emit({'id': path.stem, 'status': LINT, 'error': str(e)}, ctx.obj['FORMAT'])
        ctx.exit(EXIT_LINT)
    report = verify_certificate(certificate)
    emit(report.to_dict(), ctx.obj['FORMAT'])
    ctx.exit(report.exit_code)


@cli.command(name='verify-appendix')
@click.pass_context
def verify_appendix(ctx):
    """Verify every corpus certificate, repairing defective ones"""
    reports = verify_entries(CorpusManager().entries(), RunConfig.from_env())
    if ctx.obj['FORMAT'] == TEXT:
        emit({r.cert_id: r.outcome for r in reports}, TEXT)
    else:
        emit({'certificates': [r.to_dict() for r in reports]}, ctx.obj['FORMAT'])
    ctx.exit(combined_exit_code(reports))


@cli.command()
@click.option('--target', callback=validate_target, help='Coefficient to minimize, such as c{1,2,4}')
@click.option('--set', 'normalizations', multiple=True, callback=validate_normalizations,
              help='Normalization such as c{1,2,3}=-1')
@click.option('--assume', 'assumptions', multiple=True, callback=validate_assumptions,
              help='Assumption such as c{1,4,5}<=1/6')
@click.option('--params', default='3,5,9', show_default=True, callback=validate_params)
@click.option('--file', 'path', type=click.Path(exists=True, dir_okay=False, path_type=Path),
              help='Problem file with a minimize line')
@click.option('--emit', 'emit_path', type=click.Path(dir_okay=False, path_type=Path),
              help='Write the emitted certificate here')
@click.pass_context
def search(ctx, target, normalizations, assumptions, params, path, emit_path):
    """Minimize one coefficient over the F-nef cone and emit a certificate"""
    if path is not None:
        problem = LPProblem.from_certificate(parse_certificate(path.read_text(), strict=True, cert_id=path.stem))
    elif target is not None:
        problem = LPProblem(target, tuple(normalizations), tuple(assumptions), params)
    else:
        raise click.UsageError("Either --target or --file is required.")

    report = search_bound(problem, cert_id=problem.target.functional_id)
    result = report.to_dict()
    if emit_path is not None and report.certificate is not None:
        emit_path.write_text(report.certificate.to_text())
        result['emitted'] = str(emit_path)
    emit(result, ctx.obj['FORMAT'])
    ctx.exit(EXIT_PASS if report.status == OPTIMAL else EXIT_BOUND_GAP)


@cli.command(name='prove-m07')
@click.option('--no-coverage', is_flag=True, help='Skip the threshold coverage report')
@click.pass_context
def prove_m07(ctx, no_coverage: bool):
    """Replay the full case analysis for seven marked points"""
    report = verify_theorem_m07(RunConfig.from_env(), coverage=not no_coverage)
    emit(report.to_dict(), ctx.obj['FORMAT'])
    ctx.exit(EXIT_PASS if report.passed else EXIT_BOUND_GAP)


def run_command(argv: list[str]) -> int:
    """Run the CLI without exiting the interpreter and return its exit code"""
    try:
        code = cli.main(args=list(argv), prog_name='fnef', standalone_mode=False)
    except click.UsageError as e:
        click.echo(e.format_message(), err=True)
        return EXIT_USAGE
    except click.ClickException as e:
        click.echo(e.format_message(), err=True)
        return EXIT_USAGE
    except click.Abort:
        return EXIT_USAGE
    except FnefError as e:
        click.echo(f"error: {e}", err=True)
        return EXIT_DOMAIN
    return code if isinstance(code, int) else EXIT_PASS


def run() -> None:  # pragma: no cover
    sys.exit(run_command(sys.argv[1:]))


if __name__ == '__main__':  # pragma: no cover
    run()
