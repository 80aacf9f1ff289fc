from ._base import PipelineCommand


class Command(PipelineCommand):
    help = "Validate a singular tri-plane diagram and lift its trisection parameters"
    command = "triplane"
