from ._base import PipelineCommand


class Command(PipelineCommand):
    help = "3x3 block of linking numbers of the lifts of two curves in the dihedral cover"
    command = "linking"

    def add_command_arguments(self, parser):
        parser.add_argument("--g", default=None, help="Curve whose lifts are solved for (the partner curve)")
        parser.add_argument("--h", required=True, help="Curve whose lifts are evaluated")

    def command_options(self, options):
        return {"g": options["g"], "h": options["h"]}
