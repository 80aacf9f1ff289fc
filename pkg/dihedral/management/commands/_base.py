from django.conf import settings
from django.core.management.base import BaseCommand, CommandError

from dihedral.covers import RESOLUTIONS
from dihedral.exceptions import DihedralError
from dihedral.pipeline import PipelineConfig, run


class PipelineCommand(BaseCommand):
    """Shared flags and error mapping of the dihedral commands."""

    command = None
    takes_files = True

    def add_arguments(self, parser):
        if self.takes_files:
            parser.add_argument("files", nargs="+" if self.command == "lift_shadow" else 1, help="Input file(s)")
        parser.add_argument("--p", type=int, default=None, help="Odd prime modulus; a p set in the input file wins (default DIHEDRAL_DEFAULT_P)")
        parser.add_argument("--json", action="store_true", help="Emit JSON instead of text")
        parser.add_argument("--resolution", choices=RESOLUTIONS, default=None)
        self.add_command_arguments(parser)

    def add_command_arguments(self, parser):
        pass

    def command_options(self, options):
        return {}

    def handle(self, *args, **options):
        try:
            config = PipelineConfig(
                command=self.command,
                inputs=options.get("files") or (),
                p=options["p"] or settings.DIHEDRAL["DEFAULT_P"],
                fmt="json" if options["json"] else "text",
                resolution=options["resolution"] or settings.DIHEDRAL["DEFAULT_RESOLUTION"],
                options=self.command_options(options),
            )
        except DihedralError as exc:
            raise CommandError(exc.message, returncode=exc.exit_code)
        result = run(config)
        if result.exit_code:
            raise CommandError(result.error, returncode=result.exit_code)
        self.stdout.write(result.output)
