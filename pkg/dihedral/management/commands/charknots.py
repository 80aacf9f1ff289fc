from ._base import PipelineCommand


class Command(PipelineCommand):
    help = "Mod p characteristic knots of the Seifert form, with the admissibility checks"
    command = "charknots"
