"""
Command line front end.

Every command writes one deterministic document (JSON or CSV) to ``--out`` or stdout.
Exit status is 0 on success, 2 when a validation verdict is false and 1 on any
operational failure, which also prints a JSON error record on stderr.
"""
import argparse
import json
import logging
import math
import sys
from pathlib import Path
from typing import *

import numpy as np
from pydantic import BaseModel, Field, ValidationError, model_validator

from fractional_mra.analysis_exception import AnalysisError
from fractional_mra.catalog import TestSignalSpec, make_scaling, make_test_signal, make_wavelet
from fractional_mra.fractional_systems import gram_matrix
from fractional_mra.frft_core import frft_fast, frft_quadrature
from fractional_mra.frwt import WaveletAtomGrid, admissibility, cwt, frame_ratio
from fractional_mra.mra_analysis import (
    ValidationReport, orthonormality_test, orthonormalize, profile_of, validate_scaling,
)
from fractional_mra.report_io import (
    CWT_HEADER, GRAM_HEADER, SPECTRUM_HEADER, complex_rows, dumps_report, dumps_rows, gram_rows, load_signal,
    write_rows,
)
from fractional_mra.settings.logging_config import LogLevel
from fractional_mra.settings.settings_from_loaders import SettingsFromLoaders
from fractional_mra.settings.settings_from_toml_env import SettingsFromTomlEnv
from fractional_mra.settings.settings_root import SettingsRoot
from fractional_mra.settings_loaders.env_settings_loader import EnvSettingsLoader
from fractional_mra.types.angle import AngleParam, as_angle
from fractional_mra.types.enum import Command, FrftMethod, OutputFormat, SignalKind
from fractional_mra.types.grid import SampledSignal, UniformGrid

log = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_VERDICT_FALSE = 2

KERNEL_CONVENTION = "sqrt((1 - i cot(a)) / (2 pi)) exp(i (t^2 + u^2) cot(a) / 2 - i t u csc(a))"
CWT_SCALES = 25
CWT_SHIFTS = 129
LIMIT_HEADER = ('j', 'u', 'modulus')
PROFILE_HEADER = ('u', 'g2')
FRAME_HEADER = ('trial', 'ratio')


class RunConfig(BaseModel):
    command: Command
    alpha: float
    scaling: str = 'haar'
    wavelet: str = 'haar_wavelet'
    signal: str = 'gaussian'
    grid_n: int = 4096
    domain_half_width: float = Field(default=16.0, gt=0.0)
    tol: float = Field(default=1e-3, gt=0.0)
    seed: int = 0
    out_path: Optional[Path] = None
    format: OutputFormat = OutputFormat.json
    angle_eps: float = Field(default=1e-9, gt=0.0)

    @model_validator(mode='after')
    def _check_run(self) -> 'RunConfig':
        n = self.grid_n
        if n < 256 or n & (n - 1):
            raise ValueError(f"grid_n must be a power of two >= 256, got {n}")
        if not math.isfinite(self.alpha):
            raise ValueError(f"alpha must be finite, got {self.alpha}")
        if self.command != Command.frft and not self.angle.is_generic:
            raise ValueError(f"{self.command} needs a generic angle, got {self.angle}")
        return self

    @property
    def angle(self) -> AngleParam:
        return as_angle(self.alpha, eps=self.angle_eps)

    @property
    def signal_grid(self) -> UniformGrid:
        return UniformGrid.symmetric(self.domain_half_width, self.grid_n)


class RunResult(NamedTuple):
    text: str
    verdict: bool = True


def builtin_signal(name: str, seed: int = 0) -> Optional[TestSignalSpec]:
    """Catalog test signal for names like ``gaussian``, ``chirp`` or ``hermite3``; None otherwise."""
    name = name.strip().lower()
    if name.startswith('hermite') and name[len('hermite'):].isdigit():
        return TestSignalSpec(kind=SignalKind.hermite, order=int(name[len('hermite'):]))
    if name == SignalKind.chirp:
        return TestSignalSpec(kind=SignalKind.chirp, rate=1.0, scale=2.0)
    if name == SignalKind.bandlimited_random:
        return TestSignalSpec(kind=SignalKind.bandlimited_random, seed=seed, scale=2.0)
    if name in SignalKind.__members__:
        return TestSignalSpec(kind=SignalKind(name))
    return None


def resolve_signal(config: RunConfig) -> SampledSignal:
    spec = builtin_signal(config.signal, config.seed)
    if spec is not None:
        return make_test_signal(spec, config.signal_grid)
    return load_signal(config.signal)


def run_frft(config: RunConfig, settings: SettingsRoot) -> RunResult:
    alpha = config.angle
    signal = resolve_signal(config)
    if settings.frft.method == FrftMethod.quadrature:
        table = frft_quadrature(signal, alpha, signal.grid, edge_tol=settings.frft.edge_tol)
    else:
        table = frft_fast(signal, alpha, edge_tol=settings.frft.edge_tol)
    notes = list(table.warnings)
    if settings.frft.verify and settings.frft.method == FrftMethod.fast and alpha.is_generic:
        reference = frft_quadrature(signal, alpha, table.grid, edge_tol=settings.frft.edge_tol)
        scale = max(float(np.linalg.norm(reference.values)), 1e-300)
        mismatch = float(np.linalg.norm(table.values - reference.values)) / scale
        log.info(f"fast transform agrees with quadrature to {mismatch:.3e}")
        if mismatch > settings.frft.fast_tol:
            message = f"fast and quadrature transforms differ by {mismatch:.3e} (> {settings.frft.fast_tol:.1e})"
            log.warning(message)
            notes.append(message)

    digits = settings.output.significant_digits
    if config.format == OutputFormat.csv:
        return RunResult(dumps_rows(SPECTRUM_HEADER, complex_rows(table.points, table.values), digits))
    document = {
        'alpha': alpha.alpha,
        'signal': config.signal,
        'grid': {'start': table.grid.start, 'step': table.grid.step, 'count': table.grid.count},
        'values': table.values,
        'warnings': notes,
    }
    return RunResult(dumps_report(document, digits))


def validation_document(report: ValidationReport) -> Dict[str, Any]:
    return {
        'convention': {
            'kernel': KERNEL_CONVENTION,
            'c_alpha': report.convention_constants['c_alpha'],
            'ell': report.convention_constants['ell'],
        },
        'alpha': report.alpha.alpha,
        'function': report.function,
        'conditions': {'c51': report.condition_51, 'c52': report.condition_52, 'c53': report.condition_53},
        'riesz': {'A': report.riesz.A, 'B': report.riesz.B},
        'qmf_defect': report.qmf_defect,
        'theta0': report.theta0,
        'verdict': report.verdict,
        'diagnostics': list(report.diagnostics),
    }


def _validate(config: RunConfig, settings: SettingsRoot) -> ValidationReport:
    analysis = settings.analysis
    phi = make_scaling(config.scaling, config.angle)
    return validate_scaling(
        phi, config.angle, tol=config.tol, residual_tol=analysis.residual_tol,
        grid_per_period=analysis.grid_per_period, truncation_k=analysis.truncation_k,
        gram_order=analysis.gram_order, j_max=analysis.limit_j_max, u_samples=analysis.limit_u_samples,
        monotone_tol=analysis.monotone_tol, monotone_fraction=analysis.monotone_fraction,
        inconsistency_factor=analysis.inconsistency_factor,
    )


def run_validate(config: RunConfig, settings: SettingsRoot) -> RunResult:
    report = _validate(config, settings)
    return RunResult(dumps_report(validation_document(report), settings.output.significant_digits), report.verdict)


def _plot_path(out_path: Path, suffix: str) -> Path:
    return out_path.with_name(f"{out_path.stem}.{suffix}.csv")


def run_report(config: RunConfig, settings: SettingsRoot) -> RunResult:
    """Validation report plus plot data: periodization profile, dyadic limit table and a CWT table."""
    digits = settings.output.significant_digits
    report = _validate(config, settings)
    profile, limit = report.profile, report.limit
    document = validation_document(report)
    document['plot'] = {
        'profile': {'u': profile.u_grid.points, 'g2': profile.g2},
        'limit': {
            'u': limit.u_samples, 'j': np.arange(limit.j_max + 1), 'modulus': limit.table, 'ell': limit.limit,
        },
    }
    if config.out_path is not None:
        write_rows(_plot_path(config.out_path, 'profile'), PROFILE_HEADER,
                   zip(profile.u_grid.points, profile.g2), digits)
        write_rows(_plot_path(config.out_path, 'limit'), LIMIT_HEADER, (
            (j, u, limit.table[j, i]) for j in range(limit.j_max + 1) for i, u in enumerate(limit.u_samples)
        ), digits)
        signal = resolve_signal(config)
        psi = make_wavelet(config.wavelet, config.angle)
        half = 0.5 * config.domain_half_width
        table = cwt(signal, psi, config.angle, 2.0 ** np.linspace(-3.0, 3.0, CWT_SCALES),
                    np.linspace(-half, half, CWT_SHIFTS), edge_tol=settings.frft.edge_tol)
        write_rows(_plot_path(config.out_path, 'cwt'), CWT_HEADER, table.rows(), digits)
    return RunResult(dumps_report(document, digits), report.verdict)


def run_orthonormalize(config: RunConfig, settings: SettingsRoot) -> RunResult:
    analysis = settings.analysis
    alpha = config.angle
    phi = make_scaling(config.scaling, alpha)
    psi = orthonormalize(phi, alpha, analysis.grid_per_period, analysis.truncation_k)
    before = profile_of(phi, alpha, analysis.grid_per_period, analysis.truncation_k)
    after = orthonormality_test(
        psi, alpha, config.tol, analysis.grid_per_period, analysis.truncation_k, analysis.gram_order,
        analysis.inconsistency_factor,
    )
    digits = settings.output.significant_digits
    if config.format == OutputFormat.csv:
        rows = zip(before.u_grid.points, before.g2, after.profile.g2)
        return RunResult(dumps_rows(('u', 'g2_before', 'g2_after'), rows, digits), after.passed)
    document = {
        'alpha': alpha.alpha,
        'function': str(phi),
        'orthonormalized': str(psi),
        'before': {'A': float(before.g2.min()), 'B': float(before.g2.max()), 'defect': before.defect()},
        'after': {
            'A': float(after.profile.g2.min()), 'B': float(after.profile.g2.max()),
            'defect': after.defect, 'gram_defect': after.gram_defect,
        },
        'verdict': after.passed,
        'diagnostics': list(after.warnings),
    }
    return RunResult(dumps_report(document, digits), after.passed)


def run_gram(config: RunConfig, settings: SettingsRoot) -> RunResult:
    phi = make_scaling(config.scaling, config.angle)
    gram = gram_matrix(phi, config.angle, settings.analysis.gram_order)
    digits = settings.output.significant_digits
    if config.format == OutputFormat.csv:
        return RunResult(dumps_rows(GRAM_HEADER, gram_rows(gram.indices, gram.entries), digits))
    document = {
        'alpha': config.angle.alpha,
        'function': str(phi),
        'method': str(gram.method),
        'order': gram.order,
        'identity_defect': gram.identity_defect(),
        'entries': gram.entries,
        'warnings': list(gram.warnings),
    }
    return RunResult(dumps_report(document, digits))


def run_framebounds(config: RunConfig, settings: SettingsRoot) -> RunResult:
    frame = settings.frame
    alpha = config.angle
    psi = make_wavelet(config.wavelet, alpha)
    grid = WaveletAtomGrid(alpha=alpha, j_min=frame.j_min, j_max=frame.j_max, k_min=frame.k_min, k_max=frame.k_max)
    estimate = frame_ratio(
        psi, alpha, trials=frame.trials, seed=config.seed, grid=grid, band=frame.band,
        low_band=frame.low_band, window=frame.window, coverage_tol=frame.coverage_tol,
    )
    constant = admissibility(psi, alpha, delta=frame.delta, divergence_tol=frame.divergence_tol)
    digits = settings.output.significant_digits
    if config.format == OutputFormat.csv:
        return RunResult(dumps_rows(FRAME_HEADER, enumerate(estimate.per_signal_ratios), digits))
    document = {
        'alpha': alpha.alpha,
        'function': str(psi),
        'frame': {
            'A_hat': estimate.A_hat, 'B_hat': estimate.B_hat, 'trials': estimate.trials, 'seed': estimate.seed,
            'per_signal_ratios': estimate.per_signal_ratios, 'outside_fraction': estimate.outside_fraction,
        },
        'admissibility': {
            'value': constant.value, 'divergent': constant.divergent,
            'deltas': constant.deltas, 'estimates': constant.estimates,
        },
        'diagnostics': list(estimate.warnings),
    }
    return RunResult(dumps_report(document, digits))


COMMANDS: Dict[Command, Callable[[RunConfig, SettingsRoot], RunResult]] = {
    Command.frft: run_frft,
    Command.validate: run_validate,
    Command.orthonormalize: run_orthonormalize,
    Command.gram: run_gram,
    Command.framebounds: run_framebounds,
    Command.report: run_report,
}


def run(config: RunConfig, settings: Optional[SettingsRoot] = None) -> int:
    """Run one command and write its document. Returns the exit status."""
    if settings is None:
        settings = SettingsRoot()
    log.info(f"{config.command} at alpha={config.alpha!r}")
    result = COMMANDS[config.command](config, settings)
    if config.out_path is None:
        sys.stdout.write(result.text)
    else:
        config.out_path.parent.mkdir(parents=True, exist_ok=True)
        config.out_path.write_text(result.text, encoding='utf-8', newline='')
        log.info(f"wrote {config.out_path}")
    if not result.verdict:
        log.info(f"{config.command}: verdict false")
        return EXIT_VERDICT_FALSE
    return EXIT_OK


def load_settings(config_file: Optional[str] = None) -> SettingsRoot:
    if config_file is None:
        return SettingsFromLoaders(_settings_loaders=[EnvSettingsLoader()])
    path = Path(config_file).expanduser()
    if not path.is_file():
        raise FileNotFoundError(f"settings file {path} not found")
    return SettingsFromTomlEnv(file_name=path.name, start_path=path.parent)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--alpha', type=float, required=True, help="transform order in radians")
    common.add_argument('--scaling', default='haar', help="catalog scaling function, e.g. haar, shannon, bspline2")
    common.add_argument('--wavelet', default='haar_wavelet', help="catalog wavelet prototype")
    common.add_argument('--signal', default='gaussian', help="builtin test signal name or a t,re,im CSV path")
    common.add_argument('--grid-n', type=int, default=None, help="points of the signal grid (power of two)")
    common.add_argument('--domain', type=float, default=None, help="half width of the signal grid")
    common.add_argument('--tol', type=float, default=None)
    common.add_argument('--seed', type=int, default=0)
    common.add_argument('--out', default=None, help="output file; stdout when omitted")
    common.add_argument('--format', choices=[str(f) for f in OutputFormat], default=str(OutputFormat.json))
    common.add_argument('--config', default=None, help="TOML settings file")
    common.add_argument('--log-level', choices=[str(level) for level in LogLevel], default=None)

    parser = argparse.ArgumentParser(
        prog='fractional-mra',
        description="Fractional Fourier transforms and fractional multiresolution checks.",
    )
    commands = parser.add_subparsers(dest='command', required=True)
    for command in Command:
        commands.add_parser(str(command), parents=[common])
    return parser


def _out_path(out: Optional[str], settings: SettingsRoot) -> Optional[Path]:
    if out is None:
        return None
    path = Path(out).expanduser()
    if not path.is_absolute() and settings.output.output_folder is not None:
        path = Path(settings.output.output_folder, path)
    return path


def error_record(error: BaseException, command: Optional[str]) -> str:
    return json.dumps(
        {'error': type(error).__name__, 'message': str(error), 'command': command}, sort_keys=True,
    )


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        settings = load_settings(args.config)
        if args.log_level is not None:
            settings.logging.console_log_level = args.log_level
        if args.tol is not None:
            settings.analysis.tol = args.tol
        settings.logging.setup_logging()
        config = RunConfig(
            command=args.command,
            alpha=args.alpha,
            scaling=args.scaling,
            wavelet=args.wavelet,
            signal=args.signal,
            grid_n=settings.output.grid_n if args.grid_n is None else args.grid_n,
            domain_half_width=settings.output.domain_half_width if args.domain is None else args.domain,
            tol=settings.analysis.tol,
            seed=args.seed,
            out_path=_out_path(args.out, settings),
            format=args.format,
            angle_eps=settings.frft.angle_eps,
        )
        return run(config, settings)
    # AnalysisError and pydantic's ValidationError are both ValueErrors
    except (AnalysisError, ValidationError, ValueError, OSError) as e:
        log.error(f"{args.command} failed: {e}")
        sys.stderr.write(error_record(e, args.command) + '\n')
        return EXIT_FAILURE


if __name__ == '__main__':
    raise SystemExit(main())
