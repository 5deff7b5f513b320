import logging
import os

APP_LOGGER_NAME = "app"


class Logger:
    """
    Log wrapper for one command: writes the command's own records and the engine's
    (`app.core.*` loggers propagate to the `app` logger) into a single log file.
    """
    def __init__(self, log_file_name, log_dir, level=logging.INFO, format="%(asctime)s %(filename)s %(levelname)s %(message)s"):
        """
        Attaches a file handler for `log_dir/log_file_name` to the `app` logger.

        Args:
            log_file_name (str): The name of the log file.
            log_dir (str): Directory holding the log files; created when missing.
            level (int | str): The logging level (default is logging.INFO).
            format (str): The log message format.
        """
        os.makedirs(log_dir, exist_ok=True)
        self.path = os.path.abspath(os.path.join(log_dir, log_file_name))
        self.logger = logging.getLogger(APP_LOGGER_NAME)
        self.logger.setLevel(level)

        # a command may run several times in one process (tests); keep one handler per file
        for handler in list(self.logger.handlers):
            if isinstance(handler, logging.FileHandler) and handler.baseFilename == self.path:
                self.logger.removeHandler(handler)
                handler.close()

        formatter = logging.Formatter(format)
        self.file_handler = logging.FileHandler(self.path, mode='w', encoding='utf-8')
        self.file_handler.setLevel(level)
        self.file_handler.setFormatter(formatter)

        self.logger.addHandler(self.file_handler)

    def close(self):
        """Detach and close the file handler."""
        self.logger.removeHandler(self.file_handler)
        self.file_handler.close()

    def info(self, message):
        """Log an informational message."""
        self.logger.info(message, stacklevel=2)  # Get caller’s filename

    def error(self, message):
        """Log an error message."""
        self.logger.error(message, stacklevel=2)

    def warning(self, message):
        """Log a warning message."""
        self.logger.warning(message, stacklevel=2)

    def debug(self, message):
        """Log a debug message."""
        self.logger.debug(message, stacklevel=2)
