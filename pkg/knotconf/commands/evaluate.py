import argparse

from knotconf.application import Command, Settings
from knotconf.coproduct import ColoredGrading
from knotconf.errors import ParseError
from knotconf.expression import parse_element
from knotconf.pairing import ClassLabel, eval_connect_sum, load_pairing_table


class Evaluate(Command):
    name = "eval"
    help = "evaluate a class on the connect sum of two knot classes"

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        parser.add_argument(
            "--beta", required=True, help="class on C_{Q,T} as an expression"
        )
        parser.add_argument(
            "--Q", type=int, required=True, help="points on the knot"
        )
        parser.add_argument(
            "--T", type=int, default=0, help="free points (default 0)"
        )
        parser.add_argument(
            "--table", required=True, help="JSON pairing table file"
        )
        parser.add_argument(
            "--a1", required=True, help="first class, name or name:degree"
        )
        parser.add_argument(
            "--a2", required=True, help="second class, name or name:degree"
        )
        parser.add_argument(
            "--strict",
            action=argparse.BooleanOptionalAction,
            default=None,
            help="fail on missing table entries instead of reading 0",
        )
        parser.add_argument(
            "--unit-normalization",
            action=argparse.BooleanOptionalAction,
            default=None,
            help="read absent unit pairings on C_{0,0} as 1",
        )
        parser.add_argument(
            "--degree-shift", type=int, help="declared degree shift"
        )
        parser.add_argument(
            "--strict-degree",
            action="store_true",
            help="enforce deg a1 + deg a2 = deg beta - 2 shift",
        )

    def run(self, args: argparse.Namespace, settings: Settings) -> dict:
        try:
            with open(args.table, "r", encoding="utf-8") as f:
                document = f.read()
        except OSError as error:
            raise ParseError(
                "cannot read table {}: {}".format(args.table, error.strerror)
            ) from error

        table = load_pairing_table(
            document,
            settings.n,
            settings.coefficients,
            settings.degree_shift,
            settings.unit_normalization,
        )
        grading = ColoredGrading(args.Q, args.T)
        beta = parse_element(args.beta, table.params(grading))
        result = eval_connect_sum(
            beta,
            grading,
            ClassLabel.from_str(args.a1),
            ClassLabel.from_str(args.a2),
            table,
            strict=settings.strict,
            strict_degree=args.strict_degree,
        )
        return result.as_dict()
