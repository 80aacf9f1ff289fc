from ._base import PipelineCommand


class Command(PipelineCommand):
    help = "Enumerate the Fox p-colorings of a knot file and check its given coloring"
    command = "colorings"

    def add_command_arguments(self, parser):
        parser.add_argument("--nontrivial-only", action="store_true", help="List nontrivial colorings only")

    def command_options(self, options):
        return {"nontrivial_only": options["nontrivial_only"]}
