from ._base import PipelineCommand


class Command(PipelineCommand):
    help = "Euler characteristic (and, given Xi, the signature) of a dihedral cover of a 4-manifold"
    command = "euler"
    takes_files = False

    def add_command_arguments(self, parser):
        parser.add_argument("--chi-b", type=int, required=True, help="Euler characteristic of the branch surface")
        parser.add_argument("--m", type=int, default=0, help="Number of singular points")
        parser.add_argument("--sigma-x", type=int, default=0, help="Signature of the base")
        parser.add_argument("--e", type=int, default=0, help="Normal Euler number of the branch surface")
        parser.add_argument("--xi", default=None, help="Signature defect, integer or fraction")

    def command_options(self, options):
        return {
            "chi_b": options["chi_b"],
            "m": options["m"],
            "sigma_x": options["sigma_x"],
            "e": options["e"],
            "xi": options["xi"],
        }
