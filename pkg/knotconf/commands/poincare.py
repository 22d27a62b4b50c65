import argparse

from knotconf.application import Command, Settings
from knotconf.arnold import format_polynomial, poincare_polynomial


class Poincare(Command):
    name = "poincare"
    help = "Poincare polynomial of the configuration space"

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        parser.add_argument(
            "--q", type=int, required=True, help="number of points"
        )

    def run(self, args: argparse.Namespace, settings: Settings) -> str:
        return format_polynomial(poincare_polynomial(settings.params(args.q)))
