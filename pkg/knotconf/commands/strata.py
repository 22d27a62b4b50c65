import argparse
from typing import Union

from knotconf.application import Command, Settings
from knotconf.strata import FacePoset, enumerate_strata


class Strata(Command):
    name = "strata"
    help = "enumerate stratum labels or print the face poset as DOT"

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        parser.add_argument(
            "--q", type=int, required=True, help="number of points"
        )
        parser.add_argument(
            "--max-codim", type=int, help="skip deeper strata"
        )
        parser.add_argument(
            "--dot", action="store_true", help="print the poset as DOT"
        )
        parser.add_argument(
            "--infinity",
            action="store_true",
            help="add the point at infinity to the ground set",
        )

    def run(
        self, args: argparse.Namespace, settings: Settings
    ) -> Union[str, dict]:
        if args.dot:
            poset = FacePoset(args.q, args.max_codim, args.infinity)
            return poset.to_dot()

        labels = enumerate_strata(args.q, args.max_codim, args.infinity)
        return {
            "q": args.q,
            "point_at_infinity": args.infinity,
            "count": len(labels),
            "strata": [
                {"label": str(label), "codim": label.codimension}
                for label in labels
            ],
        }
