#!/usr/bin/env python3
# -*- coding: utf-8 -*-
#
# i18n.py - Translation support for command line messages
#
import gettext
import os

# Determine locale directory (works in AppImage and system install)
locale_dir = '/usr/share/locale'

if 'APPIMAGE' in os.environ or 'APPDIR' in os.environ:
    # i18n.py is in: usr/share/sif-ldlt/utils/i18n.py
    script_dir = os.path.dirname(os.path.abspath(__file__))
    share_dir = os.path.dirname(os.path.dirname(script_dir))
    appimage_locale = os.path.join(share_dir, 'locale')

    if os.path.isdir(appimage_locale):
        locale_dir = appimage_locale

gettext.bindtextdomain("sif-ldlt", locale_dir)
gettext.textdomain("sif-ldlt")

_ = gettext.gettext
