#!/usr/bin/env python3

"""Command-line interface for hdecomp."""

import logging as log
import os
import sys
import time

from .commands import EXIT_USAGE, execute
from .config import INPUT_COMMANDS, TREE_COMMANDS, LogSettings, Settings, parse_args
from .decorators import log_runtime_stats

_handlers: list[log.Handler] = []


def check_requirements():
    """Assert Python version requrements."""
    min_major, min_minor = (3, 10)
    if (sys.version_info.major, sys.version_info.minor) < (min_major, min_minor):
        print(f"This code requires Python {min_major}.{min_minor} or greater")
        sys.exit(1)


def sanity_check_settings(settings: Settings) -> bool:
    """
    Carry out sanity checks.

    Logger has not been set up yet, so use print() on stderr.
    Carries out the following checks:
      - Ensure input and tree files exist and are readable
      - Ensure the ground-set limit is positive and the sample count not negative
      - Ensure DOT output is only requested for commands producing trees
    """

    command_settings = settings.command_settings
    errors = []
    if command_settings.command in INPUT_COMMANDS and command_settings.input is None:
        errors.append(f"{command_settings.command} needs an input file")
    for f in (command_settings.input, command_settings.tree):
        if f is None:
            continue
        if not f.is_file():
            errors.append(f"file {f} not found!")
        elif not os.access(f, os.R_OK):
            errors.append(f"file {f} exists but not readable!")
    if settings.limit_settings.ground_set < 1:
        errors.append("--limit must be at least 1")
    if settings.oracle_settings.samples < 0:
        errors.append("--samples must not be negative")
    if command_settings.output_format == "dot" and command_settings.command not in TREE_COMMANDS:
        errors.append(f"--format dot is not available for {command_settings.command}")

    for error in errors:
        print(f"[ERROR] {error}", file=sys.stderr)
    return not errors


def init_logger(settings: LogSettings):
    """Initilize the logger. Use UTC-based timestamps and log to file if requested."""

    log_fmt = log.Formatter(
        fmt="%(asctime)s | %(levelname)-8s | %(message)s", datefmt="%Y-%m-%dT%H:%M:%SZ"
    )
    log.Formatter.converter = time.gmtime
    root_logger = log.getLogger()
    root_logger.setLevel(log.NOTSET)
    while _handlers:
        handler = _handlers.pop()
        root_logger.removeHandler(handler)
        handler.close()

    console_handler = log.StreamHandler(sys.stderr)
    console_handler.setFormatter(log_fmt)
    console_handler.setLevel(settings.log_level)
    root_logger.addHandler(console_handler)
    _handlers.append(console_handler)

    if settings.store_debug_log:
        file_handler = log.FileHandler(settings.debug_log_path)
        file_handler.setFormatter(log_fmt)
        file_handler.setLevel(log.DEBUG)
        root_logger.addHandler(file_handler)
        _handlers.append(file_handler)
        log.debug("Storing debug log to file %s", settings.debug_log_path.name)


def init(argv=None) -> Settings | None:
    """
    Handle initialization.

    First, check requirements, then parse command-line arguments and create
    settings object. Next, sanity-check the settings and initialize the logger.
    Returns None if the sanity checks fail.
    """

    check_requirements()
    args = parse_args(argv)
    settings = Settings.parse(args)
    if not sanity_check_settings(settings):
        return None
    init_logger(settings.log_settings)
    log.info("%s", settings.version_info)
    log.info("Run settings: %s", settings)
    return settings


def run(argv=None) -> int:
    """Run one command and return its exit code."""
    settings = init(argv)
    if settings is None:
        return EXIT_USAGE
    code = execute(settings)
    log_runtime_stats()
    return code


def main():
    """Execution entry point."""
    sys.exit(run())


if __name__ == "__main__":
    main()
