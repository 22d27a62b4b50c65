from __future__ import annotations

import argparse
import importlib
import inspect
import sys
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import Optional, Union

import nestedtext
from loguru import logger

from knotconf.arnold import Coefficients, RingParams
from knotconf.errors import (
    EXIT_CODES,
    KnotconfError,
    ParseError,
    UsageError,
)
from knotconf.util import optional_int, str_to_bool, str_to_int, to_json


COMMAND_MODULES = (
    "reduce",
    "basis",
    "poincare",
    "qdims",
    "strata",
    "verify_faces",
    "sigma",
    "coproduct",
    "evaluate",
    "bracket",
)
"""Modules under knotconf.commands providing the subcommands, in help order."""


Output = Union[str, dict, list]


class ArgumentParser(argparse.ArgumentParser):
    """Parser reporting usage errors as UsageError instead of exiting."""

    def error(self, message: str):
        raise UsageError("{}: {}".format(self.prog, message))


@dataclass
class Settings:
    """Effective settings: defaults, then the config file, then flags."""

    n: int = 3
    coefficients: Coefficients = field(default_factory=Coefficients)
    strict: bool = False
    unit_normalization: bool = False
    degree_shift: Optional[int] = None
    log_level: str = "WARNING"

    def params(self, q: int) -> RingParams:
        return RingParams(self.n, q, self.coefficients)

    @classmethod
    def resolve(cls, config: dict, args: argparse.Namespace) -> Settings:
        settings = cls()

        # NestedText values are always strings.
        if "n" in config:
            settings.n = str_to_int(config["n"], "n")
        if "coefficients" in config:
            settings.coefficients = Coefficients.from_str(
                config["coefficients"]
            )
        if "strict" in config:
            settings.strict = str_to_bool(config["strict"])
        if "unit_normalization" in config:
            settings.unit_normalization = str_to_bool(
                config["unit_normalization"]
            )
        if "degree_shift" in config:
            settings.degree_shift = optional_int(
                config["degree_shift"], "degree_shift"
            )
        if "log_level" in config:
            settings.log_level = config["log_level"]

        if getattr(args, "n", None) is not None:
            settings.n = args.n
        if getattr(args, "coefficients", None) is not None:
            settings.coefficients = Coefficients.from_str(args.coefficients)
        if getattr(args, "strict", None) is not None:
            settings.strict = args.strict
        if getattr(args, "unit_normalization", None) is not None:
            settings.unit_normalization = args.unit_normalization
        if getattr(args, "degree_shift", None) is not None:
            settings.degree_shift = args.degree_shift
        if getattr(args, "log_level", None) is not None:
            settings.log_level = args.log_level

        settings.log_level = settings.log_level.strip().upper()
        return settings


class Command(ABC):
    name: str
    """Subcommand name on the command line."""

    help: str
    """One-line description shown by --help."""

    @abstractmethod
    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        """Declare the subcommand's own flags."""
        pass

    @abstractmethod
    def run(self, args: argparse.Namespace, settings: Settings) -> Output:
        """Run the subcommand.

        Returns:
            Output: Text printed as is, or a document printed as JSON.
        """
        pass


class Application:
    _commands: dict[str, Command] = {}
    """Loaded subcommands by name."""

    _config: dict = {}
    """Application configuration loaded from the config file."""

    def __init__(self) -> None:
        self._commands = {}
        self._config = {}
        for name in COMMAND_MODULES:
            for command in self._load_commands(name):
                self._commands[command.name] = command

    @property
    def commands(self) -> dict[str, Command]:
        return self._commands

    def _load_commands(self, name: str) -> list[Command]:
        commands: list[Command] = []
        module = importlib.import_module("knotconf.commands." + name)
        classes = inspect.getmembers(module, inspect.isclass)
        for (_, c) in classes:
            if issubclass(c, Command) and (c is not Command):
                commands.append(c())
        return commands

    def _parser(self) -> argparse.ArgumentParser:
        common = argparse.ArgumentParser(add_help=False)
        common.add_argument(
            "-c", "--config", help="NestedText config file to use"
        )
        common.add_argument(
            "--n", type=int, help="ambient dimension of R^n (default 3)"
        )
        common.add_argument(
            "--coefficients",
            help="coefficient ring: 'integers' (default) or 'mod <p>'",
        )
        common.add_argument(
            "--log-level", help="log level for stderr (default WARNING)"
        )

        epilog = "exit codes:\n" + "\n".join(
            "  {}  {}".format(code, description)
            for code, description in sorted(EXIT_CODES.items())
        )
        parser = ArgumentParser(
            prog="knotconf",
            description="Configuration-space cohomology and knot pairings.",
            epilog=epilog,
            formatter_class=argparse.RawDescriptionHelpFormatter,
        )
        subparsers = parser.add_subparsers(dest="subcommand", required=True)
        for command in self._commands.values():
            subparser = subparsers.add_parser(
                command.name,
                parents=[common],
                help=command.help,
                epilog=epilog,
                formatter_class=argparse.RawDescriptionHelpFormatter,
            )
            command.add_arguments(subparser)
            subparser.set_defaults(command=command)
        return parser

    def _load_config(self, path: Optional[str]) -> None:
        if path is None:
            return

        try:
            with open(path, "r", encoding="utf-8") as f:
                loaded_config = nestedtext.load(f)
        except OSError as error:
            raise ParseError(
                "cannot read config file {}: {}".format(path, error.strerror)
            ) from error
        except nestedtext.NestedTextError as error:
            lineno = getattr(error, "lineno", None)
            raise ParseError(
                "invalid config file: {}".format(error.get_message()),
                lineno + 1 if lineno is not None else None,
            ) from error

        if isinstance(loaded_config, dict):
            self._config = loaded_config
        else:
            raise ParseError("Invalid config file.")

    def _configure_logging(self, level: str) -> None:
        try:
            logger.level(level)
        except ValueError as error:
            raise ParseError(
                "'{}' is not a log level".format(level)
            ) from error
        logger.remove()
        logger.add(sys.stderr, level=level)

    def _emit(self, output: Output) -> None:
        if isinstance(output, str):
            text = output
        else:
            text = to_json(output)
        sys.stdout.write(text if text.endswith("\n") else text + "\n")

    def run(self, argv: list[str]) -> int:
        """Parse the command line, run one subcommand and print its output.

        Args:
            argv (list[str]): Full argument vector, program name first.

        Returns:
            int: Exit status, 0 on success.
        """
        try:
            args = self._parser().parse_args(argv[1:])
            self._load_config(args.config)
            settings = Settings.resolve(self._config, args)
            self._configure_logging(settings.log_level)
            logger.debug(f"Running {args.subcommand} with {settings}.")
            output = args.command.run(args, settings)
        except KnotconfError as error:
            logger.debug(f"Command line failed: {error}")
            self._emit(error.record())
            return error.exit_code

        self._emit(output)
        return 0


def main() -> None:
    app = Application()
    sys.exit(app.run(sys.argv))
