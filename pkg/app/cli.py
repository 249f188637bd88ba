"""
Příkazová řádka capcover.

Podpříkazy: approximate, pack, polar-check, experiment, verify.
Návratové kódy: 0 úspěch, 1 jiná chyba výpočtu nebo zápisu, 2 selhání ověření,
3 chybná konfigurace.
"""

import functools
import logging
from pathlib import Path

import click
from flask import current_app, has_app_context

from app.constants.construction import (
    EXIT_CONFIG_ERROR,
    EXIT_VERIFY_FAILED,
    METHODS,
    POLAR_CHECK_DIRECTIONS,
)
from app.exceptions import CapCoverError, ConfigurationError

logger = logging.getLogger(__name__)

EXIT_ERROR = 1
"""Chyba výpočtu (jiná než konfigurační) nebo chyba zápisu výstupu"""


def _fail(message: str, code: int):
    click.echo(message, err=True)
    click.get_current_context().exit(code)


def handle_errors(command):
    """Převod výjimek na návratové kódy a zprávu na stderr."""
    @functools.wraps(command)
    def wrapper(*args, **kwargs):
        try:
            return command(*args, **kwargs)
        except ConfigurationError as e:
            logger.error(f"Chyba konfigurace: {e}")
            _fail(f"Chyba konfigurace: {e}", EXIT_CONFIG_ERROR)
        except CapCoverError as e:
            logger.error(f"Chyba výpočtu: {e}")
            _fail(f"Chyba výpočtu: {e}", EXIT_ERROR)
        except OSError as e:
            logger.error(f"Chyba zápisu {e.filename}: {e.strerror}")
            _fail(f"Chyba zápisu {e.filename}: {e.strerror}", EXIT_ERROR)
    return wrapper


def _settings():
    from app import current_settings

    return current_settings()


def _bodies(path: str):
    from app.services.bodies.spec_loader import load_bodies

    return load_bodies(path)


@click.group(name="capcover")
@click.option("--env", "config_name", default=None, help="Konfigurace (development, production, testing).")
@click.pass_context
def capcover(ctx, config_name):
    """Aproximace konvexních těles polytopy s malou kombinatorickou složitostí."""
    if not has_app_context():
        from app import create_app

        ctx.with_resource(create_app(config_name).app_context())
    ctx.ensure_object(dict)


@capcover.command()
@click.option("--body", "body_path", required=True, help="JSON popis tělesa (soubor nebo řetězec).")
@click.option("--eps", type=float, required=True, help="Požadovaná přesnost ε.")
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--method", type=click.Choice(METHODS), default="layered", show_default=True)
@click.option("--out", "out_dir", type=click.Path(file_okay=False), default=".", show_default=True)
@click.option("--format", "fmt", default="json", show_default=True, help="json, csv nebo oba oddělené čárkou.")
@handle_errors
def approximate(body_path, eps, seed, method, out_dir, fmt):
    """Vnitřní (layered, bi) nebo vnější (dudley) ε-aproximace tělesa."""
    from app.services.construction.engine import approximate as run_approximation
    from app.services.export_service import emit_result, parse_formats

    formats = parse_formats(fmt)
    settings = _settings()
    for K in _bodies(body_path):
        result = run_approximation(K, eps, settings, seed, method)
        written = emit_result(result, formats, Path(out_dir), stem=f"{K.body_id}_{method}")
        click.echo(
            f"{K.body_id} ({method}, ε={eps:g}): {result.profile.vertices} vrcholů, "
            f"{result.profile.total} stěn, Hausdorff {result.hausdorff_est:.4g} "
            f"[{'OK' if result.hausdorff_ok else 'PŘEKROČENO'}] → {', '.join(str(p) for p in written)}"
        )


@capcover.command()
@click.option("--body", "body_path", required=True, help="JSON popis tělesa (soubor nebo řetězec).")
@click.option("--eps", type=float, required=True)
@click.option("--dirs", "n_dirs", type=int, default=None, help="Počet směrů (výchozí CAPCOVER_PACKING_DIRS).")
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--out", "out_dir", type=click.Path(file_okay=False), default=".", show_default=True)
@handle_errors
def pack(body_path, eps, n_dirs, seed, out_dir):
    """Hraniční pakování Macbethových oblastí a histogram tříd objemu."""
    from app.services.export_service import to_json, write_text
    from app.services.reports import packing_report

    settings = _settings()
    for K in _bodies(body_path):
        report = packing_report(K, eps, settings, seed, n_dirs)
        path = write_text(Path(out_dir) / f"{K.body_id}_packing.json", to_json(report))
        click.echo(f"{K.body_id} (ε={eps:g}): {report['count']} oblastí, třídy {report['histogram']}, "
                   f"mez tříd {'OK' if report['passed'] else 'PŘEKROČENA'} → {path}")


@capcover.command(name="polar-check")
@click.option("--body", "body_path", required=True, help="JSON popis tělesa (soubor nebo řetězec).")
@click.option("--eps", type=float, required=True)
@click.option("--dirs", "n_dirs", type=int, default=POLAR_CHECK_DIRECTIONS, show_default=True)
@click.option("--c", "c", type=float, default=None, help="Konstanta zobrazení π (výchozí CAPCOVER_POLAR_C).")
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--out", "out_dir", type=click.Path(file_okay=False), default=".", show_default=True)
@handle_errors
def polar_check(body_path, eps, n_dirs, c, seed, out_dir):
    """Součiny vol(C)·vol(π(C)) normované ε^{d+1} po směrech."""
    from app.services.export_service import to_json, write_text
    from app.services.reports import polar_report

    if c is not None and c <= 0.0:
        raise ConfigurationError(f"Konstanta c musí být kladná (dostáno {c:g})")
    settings = _settings()
    for K in _bodies(body_path):
        report = polar_report(K, eps, settings, n_dirs, c, seed)
        path = write_text(Path(out_dir) / f"{K.body_id}_polar.json", to_json(report))
        summary = report["summary"]
        click.echo(f"{K.body_id} (ε={eps:g}, c={report['c']:g}): medián {summary['median']:.4g}, "
                   f"max/min {summary['spread']:.3g} → {path}")


@capcover.command()
@click.option("--grid", "grid_path", required=True, help="JSON mřížka experimentu.")
@click.option("--out", "out_dir", type=click.Path(file_okay=False), default=".", show_default=True)
@click.option("--format", "fmt", default="csv,svg", show_default=True)
@handle_errors
def experiment(grid_path, out_dir, fmt):
    """Sweep těleso × ε × metoda × seed s regresí složitosti."""
    from app.services.export_service import emit, parse_formats
    from app.services.metrics.experiment import run_experiment

    formats = parse_formats(fmt)
    records, fits = run_experiment(grid_path, _settings())
    written = emit(records, formats, Path(out_dir), fits)
    failed = sum(1 for r in records if not r.ok)
    click.echo(f"{len(records)} buněk ({failed} selhalo), {len(fits)} fitů → {', '.join(p.name for p in written)}")
    for fit in fits:
        click.echo(f"  {fit.body}/{fit.method}: sklon {fit.slope:.3f} (teorie {fit.expected_slope:g}), "
                   f"R² {fit.r_squared:.3f}")


@capcover.command()
@click.option("--body", "body_path", required=True, help="JSON popis tělesa (soubor nebo řetězec).")
@click.option("--eps", type=float, required=True)
@click.option("--halfspaces", "n_halfspaces", type=int, default=1000, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--out", "out_dir", type=click.Path(file_okay=False), default=None,
              help="Volitelně adresář pro JSON zprávu.")
@handle_errors
def verify(body_path, eps, n_halfspaces, seed, out_dir):
    """Ověření soustavy svědků a sběračů; při porušení návratový kód 2."""
    from app.services.export_service import to_json, write_text
    from app.services.reports import verify_report

    settings = _settings()
    all_passed = True
    for K in _bodies(body_path):
        passed, report = verify_report(K, eps, settings, seed, n_halfspaces)
        all_passed = all_passed and passed
        for step in report["steps"]:
            click.echo(f"  {step['step']}: {step['detail']} → {step['result']}")
        click.echo(f"{K.body_id} (ε={eps:g}): {'OK' if passed else 'SELHALO'}")
        if out_dir is not None:
            write_text(Path(out_dir) / f"{K.body_id}_verify.json", to_json(report))
    if not all_passed:
        current_app.logger.warning("Ověření selhalo")
        click.get_current_context().exit(EXIT_VERIFY_FAILED)
