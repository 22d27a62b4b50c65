import argparse

from knotconf.application import Command, Settings
from knotconf.coproduct import ColoredGrading, coproduct_element
from knotconf.expression import parse_element


class Coproduct(Command):
    name = "coproduct"
    help = "decompose a class on C_{Q,T} over every split"

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        parser.add_argument(
            "expression", help="dual-basis labels, e.g. 'w(1,2)*w(3,4)'"
        )
        parser.add_argument(
            "--Q", type=int, required=True, help="points on the knot"
        )
        parser.add_argument(
            "--T", type=int, default=0, help="free points (default 0)"
        )

    def run(self, args: argparse.Namespace, settings: Settings) -> dict:
        grading = ColoredGrading(args.Q, args.T)
        beta = parse_element(args.expression, settings.params(grading.total))
        tensor = coproduct_element(beta, grading)
        return {
            "Q": grading.q,
            "T": grading.t,
            "n": settings.n,
            "beta": str(beta),
            "extension": tensor.extension,
            "terms": tensor.as_records(),
        }
