# ~*~ coding: utf-8 ~*~
#
import io

from rest_framework.parsers import JSONParser

__all__ = ['StrictJSONParser', 'parse_json']


class StrictJSONParser(JSONParser):
    """拒绝 NaN / Infinity 常量"""
    strict = True


def parse_json(content):
    """
    :param content: bytes 或 str
    :raise rest_framework.exceptions.ParseError
    """
    if isinstance(content, str):
        content = content.encode('utf-8')
    return StrictJSONParser().parse(io.BytesIO(content), parser_context={'encoding': 'utf-8'})
