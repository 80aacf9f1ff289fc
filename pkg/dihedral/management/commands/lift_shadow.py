from ._base import PipelineCommand


class Command(PipelineCommand):
    help = "Lift shadow words to the 3-fold cover; three colored words are identified as a genus-one diagram"
    command = "lift_shadow"

    def add_command_arguments(self, parser):
        parser.add_argument("--start-sheet", type=int, choices=[1, 2, 3], default=None)
        parser.add_argument("--i", type=int, default=None, help="Value substituted for i in the words")
        parser.add_argument("--style", choices=["unicode", "latex", "ascii"], default="unicode")

    def command_options(self, options):
        return {"start_sheet": options["start_sheet"], "i": options["i"], "style": options["style"]}
