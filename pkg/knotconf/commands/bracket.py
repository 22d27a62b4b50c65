import argparse

from knotconf.application import Command, Settings
from knotconf.coproduct import ColoredGrading
from knotconf.expression import parse_monomial
from knotconf.pairing import ClassLabel, eval_bracket


class Bracket(Command):
    name = "bracket"
    help = "pair a class with the bracket of two knot classes"

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        parser.add_argument(
            "--beta", required=True, help="basis monomial on C_{Q,T}"
        )
        parser.add_argument(
            "--Q", type=int, required=True, help="points on the knot"
        )
        parser.add_argument(
            "--T", type=int, default=0, help="free points (default 0)"
        )
        parser.add_argument("--a1", required=True, help="first class")
        parser.add_argument("--a2", required=True, help="second class")

    def run(self, args: argparse.Namespace, settings: Settings) -> dict:
        grading = ColoredGrading(args.Q, args.T)
        monomial, _ = parse_monomial(
            args.beta, settings.params(grading.total)
        )
        result = eval_bracket(
            monomial,
            grading,
            ClassLabel.from_str(args.a1),
            ClassLabel.from_str(args.a2),
            settings.n,
        )
        return result.as_dict()
