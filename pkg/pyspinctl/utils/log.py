#!/usr/bin/env python
# **************************************************************************
# *
# * pyspinctl: microwave-only control of an electron-nuclear spin pair
# *
# * This program is free software: you can redistribute it and/or modify
# * it under the terms of the GNU General Public License as published by
# * the Free Software Foundation, either version 3 of the License, or
# * (at your option) any later version.
# *
# * This program is distributed in the hope that it will be useful,
# * but WITHOUT ANY WARRANTY; without even the implied warranty of
# * MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
# * GNU General Public License for more details.
# *
# * You should have received a copy of the GNU General Public License
# * along with this program.  If not, see <https://www.gnu.org/licenses/>.
# *
# **************************************************************************
import os
import logging
import logging.config


def getLogConfiguration():
    from pyspinctl import Config
    # Log configuration
    config = {
        'version': 1,
        'disable_existing_loggers': False,
        'formatters': {
            'standard': {
                'format': '%(asctime)s %(levelname)s:  %(message)s'
            },
            'fileFormat': {
                'format': '%(asctime)s %(levelname)s %(name)s:  %(message)s'
            },
        },
        'handlers': {
            'fileHandler': {
                'level': 'NOTSET',
                'class': 'logging.handlers.RotatingFileHandler',
                'formatter': 'fileFormat',
                'filename': Config.SPINCTL_LOG,
                'maxBytes': 100000,
            },
            'consoleHandler': {
                'level': 'WARNING',
                'class': 'logging.StreamHandler',
                'formatter': 'standard',
                'stream': 'ext://sys.stderr',
            },
        },
        'loggers': {
            '': {
                'handlers': ['consoleHandler', 'fileHandler'],
                'level': 'DEBUG' if Config.debugOn() else 'INFO',
                'propagate': False,
            },
        }
    }

    # Create the log folder, read-only homes just lose the file handler
    try:
        os.makedirs(os.path.dirname(Config.SPINCTL_LOG), exist_ok=True)
    except OSError:
        del config['handlers']['fileHandler']
        config['loggers']['']['handlers'] = ['consoleHandler']

    logging.config.dictConfig(config)

    return config
