import argparse

from knotconf.application import Command, Settings
from knotconf.expression import parse_element


class Reduce(Command):
    name = "reduce"
    help = "bring an expression to normal form"

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("expression", help="e.g. 'w(1,3)*w(2,3)'")
        parser.add_argument(
            "--q", type=int, required=True, help="number of points"
        )

    def run(self, args: argparse.Namespace, settings: Settings) -> str:
        element = parse_element(args.expression, settings.params(args.q))
        return str(element)
