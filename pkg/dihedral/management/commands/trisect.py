import argparse

from ._base import PipelineCommand


def component_counts(value):
    try:
        return tuple(int(part) for part in value.replace(",", " ").split())
    except ValueError:
        raise argparse.ArgumentTypeError(f"component counts must be integers, got {value!r}")


class Command(PipelineCommand):
    help = "Trisection parameters (g;k1,k2,k3) of the p-fold dihedral cover of a bridge trisected surface"
    command = "trisect"
    takes_files = False

    def add_command_arguments(self, parser):
        parser.add_argument("--b", type=int, required=True, help="Bridge number")
        parser.add_argument(
            "--c", type=component_counts, required=True, help="Components of the three unlinks, e.g. 1,2,2"
        )
        parser.add_argument("--singular", action="store_true", help="First sector is the cone on a knot")

    def command_options(self, options):
        return {"b": options["b"], "c": options["c"], "singular": options["singular"]}
