"""
Konfigurace centralizovaného loggingu pro capcover.
"""
import logging
import os
from logging.handlers import RotatingFileHandler
from flask import Flask

HANDLER_PREFIX = "capcover-"
"""Prefix jmen handlerů instalovaných setup_logging (při opakovaném volání se nahradí)"""


def _log_dir(app: Flask) -> str:
    configured = app.config.get("CAPCOVER_LOG_DIR")
    return configured or os.path.join(app.root_path, '..', 'logs')


def setup_logging(app: Flask) -> None:
    """
    Nastaví logging pro aplikaci.

    Development: DEBUG do souboru i do konzole
    Production: INFO do souborů s rotací

    Logger aplikace se jmenuje podle balíčku ("app"), takže loggery služeb
    (app.services.*) propagují do stejných handlerů.
    """

    # Vytvoř logs adresář, pokud neexistuje
    logs_dir = _log_dir(app)
    if not os.path.exists(logs_dir):
        os.makedirs(logs_dir)

    # Handlery z předchozího create_app (testy vytvářejí aplikaci opakovaně)
    for handler in list(app.logger.handlers):
        if handler.get_name() and handler.get_name().startswith(HANDLER_PREFIX):
            app.logger.removeHandler(handler)
            handler.close()

    # Formát log zpráv
    formatter = logging.Formatter(
        '[%(asctime)s] %(levelname)s in %(module)s (%(pathname)s:%(lineno)d): %(message)s',
        datefmt='%Y-%m-%d %H:%M:%S'
    )

    # === FILE HANDLER (vždy) ===
    # Rotující soubor: max 10MB, 10 backup souborů
    file_handler = RotatingFileHandler(
        os.path.join(logs_dir, 'capcover.log'),
        maxBytes=10 * 1024 * 1024,  # 10 MB
        backupCount=10,
        encoding='utf-8'
    )
    file_handler.set_name(HANDLER_PREFIX + 'file')
    file_handler.setFormatter(formatter)

    # V produkci pouze INFO a výše, v dev i DEBUG
    if app.debug:
        file_handler.setLevel(logging.DEBUG)
    else:
        file_handler.setLevel(logging.INFO)

    app.logger.addHandler(file_handler)

    # === CONSOLE HANDLER (pouze development) ===
    if app.debug:
        console_handler = logging.StreamHandler()
        console_handler.set_name(HANDLER_PREFIX + 'console')
        console_handler.setFormatter(formatter)
        console_handler.setLevel(logging.DEBUG)
        app.logger.addHandler(console_handler)

    # === ERROR FILE HANDLER (pouze chyby) ===
    error_file_handler = RotatingFileHandler(
        os.path.join(logs_dir, 'errors.log'),
        maxBytes=10 * 1024 * 1024,
        backupCount=10,
        encoding='utf-8'
    )
    error_file_handler.set_name(HANDLER_PREFIX + 'errors')
    error_file_handler.setFormatter(formatter)
    error_file_handler.setLevel(logging.ERROR)
    app.logger.addHandler(error_file_handler)

    # Nastav úroveň loggeru balíčku
    if app.debug:
        app.logger.setLevel(logging.DEBUG)
    else:
        app.logger.setLevel(logging.INFO)

    # Úvodní log zpráva
    env_name = "Testing" if app.testing else ("Development" if app.debug else "Production")
    constants = {k[len("CAPCOVER_"):].lower(): v for k, v in app.config.items()
                 if k.startswith("CAPCOVER_") and k != "CAPCOVER_LOG_DIR" and v is not None}
    app.logger.info('=' * 80)
    app.logger.info('capcover Application Starting')
    app.logger.info(f'Environment: {env_name}')
    app.logger.info(f'Threads: {app.config.get("CAPCOVER_THREADS")}')
    app.logger.info(f'Construction settings: {constants}')
    app.logger.info('=' * 80)
