# ~*~ coding: utf-8 ~*~
#
import io

import numpy as np
import unicodecsv
from rest_framework.renderers import BaseRenderer

from .json import format_number
from ..const import CSV_FILE_ESCAPE_CHARS

__all__ = ['CSVFileRenderer']


class CSVFileRenderer(BaseRenderer):
    """
    表格数据: list[dict], 列顺序取第一行的 key 顺序
    """
    media_type = 'text/csv'
    format = 'csv'
    writer = None
    buffer = None

    escape_chars = tuple(CSV_FILE_ESCAPE_CHARS)

    def initial_writer(self):
        csv_buffer = io.BytesIO()
        csv_writer = unicodecsv.writer(csv_buffer, encoding='utf-8', lineterminator='\n')
        self.buffer = csv_buffer
        self.writer = csv_writer

    def __render_row(self, row):
        row_escape = []
        for d in row:
            if isinstance(d, (float, np.floating)):
                d = format_number(d)
            elif isinstance(d, (list, tuple, np.ndarray)):
                d = ' '.join(format_number(x) if isinstance(x, (float, np.floating)) else str(x) for x in d)
            elif isinstance(d, str) and d.strip().startswith(self.escape_chars):
                d = "'{}".format(d)
            row_escape.append(d)
        return row_escape

    def write_row(self, row):
        row = self.__render_row(row)
        self.writer.writerow(row)

    def get_rendered_value(self):
        value = self.buffer.getvalue()
        return value

    def render(self, data, accepted_media_type=None, renderer_context=None):
        self.initial_writer()
        rows = list(data or [])
        if rows:
            titles = list(rows[0].keys())
            self.write_row(titles)
            for row in rows:
                self.write_row([row.get(title) for title in titles])
        return self.get_rendered_value()
