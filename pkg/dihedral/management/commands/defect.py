from ._base import PipelineCommand


class Command(PipelineCommand):
    help = "Full signature defect pipeline of a 3-colored knot file"
    command = "defect"

    def add_command_arguments(self, parser):
        parser.add_argument("--mirror", action="store_true", help="Compute the defect of the mirror image")

    def command_options(self, options):
        return {"mirror": options["mirror"]}
