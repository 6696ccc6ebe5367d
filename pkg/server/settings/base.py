"""
Django settings for the loopspace project.

The project has no web surface: Django provides settings, logging,
management commands and the test runner.
"""
import os
from pathlib import Path

try:
    from config import *
except ImportError:
    print("未发现自定义配置，使用默认配置")

BASE_DIR = Path(__file__).resolve().parent.parent.parent

SECRET_KEY = locals().get("SECRET_KEY", 'loopspace-insecure-4q!w6x@1c9z^h0p3m$7s+e2r8t5y')

DEBUG = locals().get("DEBUG", False)
LOG_LEVEL = locals().get('LOG_LEVEL', "WARNING")
LOG_TO_FILE = locals().get('LOG_TO_FILE', True)

ALLOWED_HOSTS = []

LOOPSPACE_APPS = locals().get("LOOPSPACE_APPS", [])

INSTALLED_APPS = [
    'django.contrib.contenttypes',
    'django.contrib.auth',
    'rest_framework',
    'geometry.apps.GeometryConfig',  # 离散闭曲线, 重采样, 弧覆盖
    'multiplicity.apps.MultiplicityConfig',  # 重数函数与水平集划分
    'orbit.apps.OrbitConfig',  # 轨道等价判定
    'symmetry.apps.SymmetryConfig',  # 迷向群与覆盖分解
    'slices.apps.SlicesConfig',  # 法丛切片, 墙与图
    *LOOPSPACE_APPS,
    'common.apps.CommonConfig',
]

DATABASES = {
    'default': {
        'ENGINE': 'django.db.backends.sqlite3',
        'NAME': BASE_DIR / "db.sqlite3",
    }
}

LANGUAGE_CODE = 'en-us'
TIME_ZONE = 'UTC'
USE_I18N = True
USE_TZ = True

LOCALE_PATHS = [
    os.path.join(BASE_DIR, 'locale'),
]

DEFAULT_AUTO_FIELD = 'django.db.models.BigAutoField'

REST_FRAMEWORK = {
    'UNAUTHENTICATED_USER': None,
    'DEFAULT_RENDERER_CLASSES': (
        'common.drf.renders.json.FixedPrecisionJSONRenderer',
        'common.drf.renders.csv.CSVFileRenderer',
    ),
}
