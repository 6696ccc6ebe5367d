#!/usr/bin/env python
# -*- coding:utf-8 -*-
# project : loopspace
# filename : command
# date : 10/18/2026
import sys

from django.core.management.base import BaseCommand, CommandError

from common.core.config import ToleranceProfile
from common.core.exception import command_exception_handler
from common.drf.renders import CSVFileRenderer, FixedPrecisionJSONRenderer
from common.utils import get_logger
from server.utils import set_current_command

logger = get_logger(__name__)


class BaseCurveCommand(BaseCommand):
    """
    曲线命令基类: 容差参数, 曲线读取 (路径或 '-'), JSON/CSV 输出, 异常转退出码
    """
    help = 'Curve command'
    csv_supported = False
    stealth_options = ('stdin',)

    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        self.stdin = None

    @property
    def command_name(self):
        return self.__module__.rsplit('.', 1)[-1]

    def add_arguments(self, parser):
        self.add_command_arguments(parser)
        parser.add_argument('--eps-image', type=float, default=None, help='image separation tolerance')
        parser.add_argument('--eps-match', type=float, default=None, help='sup-distance match tolerance')
        parser.add_argument('--eps-section', type=float, default=None, help='section coefficient tolerance')
        parser.add_argument('--indent', type=int, default=None, help='pretty-print JSON output')
        if self.csv_supported:
            parser.add_argument('--csv', action='store_true', default=False, help='tabular CSV output')

    def add_command_arguments(self, parser):
        pass

    def run_from_argv(self, argv):
        try:
            super().run_from_argv(argv)
        except SystemExit as exc:
            # argparse 参数错误的退出码是 2
            if exc.code == 2:
                sys.exit(1)
            raise

    def handle(self, *args, **options):
        self.stdin = options.get('stdin') or sys.stdin
        set_current_command(self.command_name)
        logger.debug(f'command {self.command_name} options {self._visible_options(options)}')
        try:
            return self.run(**options)
        except Exception as exc:
            raise command_exception_handler(exc, self.command_name)
        finally:
            set_current_command(None)

    def run(self, **options):
        raise NotImplementedError

    @staticmethod
    def _visible_options(options):
        return {key: value for key, value in options.items() if key not in ('stdin', 'stdout', 'stderr')}

    def read_bytes(self, path) -> bytes:
        if path == '-':
            stream = getattr(self.stdin, 'buffer', self.stdin)
            content = stream.read()
            return content.encode('utf-8') if isinstance(content, str) else content
        try:
            with open(path, 'rb') as f:
                return f.read()
        except OSError as exc:
            raise CommandError(f'cannot read {path}: {exc.strerror}', returncode=1)

    def read_curve(self, path):
        from geometry.serializers import load_curve
        return load_curve(self.read_bytes(path))

    @staticmethod
    def tolerance(*curves, **options) -> ToleranceProfile:
        return ToleranceProfile.for_curves(
            *curves,
            eps_image=options.get('eps_image'),
            eps_match=options.get('eps_match'),
            eps_section=options.get('eps_section'),
        )

    def render(self, data, rows=None, **options):
        """rows 是 --csv 时输出的表格"""
        if self.csv_supported and options.get('csv'):
            content = CSVFileRenderer().render(rows if rows is not None else [])
        else:
            content = FixedPrecisionJSONRenderer(indent=options.get('indent')).render(data)
        self.stdout.write(content.decode('utf-8'), ending='')
