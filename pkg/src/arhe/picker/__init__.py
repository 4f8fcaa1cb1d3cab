from .terminal import device_dialog, run_device_picker

__all__ = ["device_dialog", "run_device_picker"]
