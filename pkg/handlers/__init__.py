"""
Регистрация подкоманд CLI
"""

from handlers.common import common_parser
from handlers.constants import register_constants_handlers
from handlers.ellipticity import register_ellipticity_handlers
from handlers.field import register_field_handlers
from handlers.verify import register_verify_handlers


def register_all_handlers(subparsers):
    """
    Регистрирует все подкоманды; каждая получает общий набор флагов
    """
    parents = [common_parser()]
    register_field_handlers(subparsers, parents)
    register_constants_handlers(subparsers, parents)
    register_ellipticity_handlers(subparsers, parents)
    register_verify_handlers(subparsers, parents)
