"""
File Management Utilities
"""
from datetime import datetime
from pathlib import Path
from typing import List, Optional

from src.utils.settings import get_settings


class FileManager:
    """
    Manages saved reports and spec file lookup.
    """

    def __init__(self, output_dir: Optional[str] = None):
        """
        Initialize FileManager.

        Args:
            output_dir: Directory for saved reports (settings default when omitted)
        """
        self.output_dir = Path(output_dir or get_settings().output_dir)

    def save_report(self, content: str, name: Optional[str] = None) -> str:
        """
        Save a report to the output directory.

        Args:
            content: Report text
            name: Optional stem; sanitized and suffixed with a timestamp

        Returns:
            Full path to saved file
        """
        self.output_dir.mkdir(parents=True, exist_ok=True)
        timestamp = datetime.now().strftime("%Y%m%d_%H%M%S")
        if name:
            # Sanitize name for filename
            safe_name = "".join(
                c for c in name if c.isalnum() or c in (" ", "-", "_")
            ).strip().replace(" ", "_")
            filename = f"{safe_name}_{timestamp}.md"
        else:
            filename = f"report_{timestamp}.md"

        file_path = self.output_dir / filename
        with open(file_path, "w", encoding="utf-8") as f:
            f.write(content)

        return str(file_path.absolute())

    def read_text(self, path: str) -> str:
        """
        Read a spec or fixture file.

        Raises:
            FileNotFoundError: the file does not exist
        """
        file_path = Path(path)
        if not file_path.exists():
            raise FileNotFoundError(f"File not found: {file_path}")
        with open(file_path, "r", encoding="utf-8") as f:
            return f.read()

    def list_reports(self) -> List[str]:
        """
        List all saved reports.

        Returns:
            Report filenames, sorted
        """
        if not self.output_dir.exists():
            return []
        return sorted(f.name for f in self.output_dir.glob("*.md"))


# Global file manager instance
_global_file_manager: Optional[FileManager] = None


def get_file_manager() -> FileManager:
    """
    Get or create a global FileManager instance.

    Returns:
        Shared FileManager instance
    """
    global _global_file_manager
    if _global_file_manager is None:
        _global_file_manager = FileManager()
    return _global_file_manager
