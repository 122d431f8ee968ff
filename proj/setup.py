import os
import subprocess
import sys
from pathlib import Path

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class CMakeExtension(Extension):
    def __init__(self, name):
        super().__init__(name, sources=[])


class CMakeBuild(build_ext):
    def build_extension(self, ext):
        source_dir = Path(__file__).resolve().parent
        build_dir = Path(self.build_temp).resolve() / "cmake"
        build_dir.mkdir(parents=True, exist_ok=True)
        subprocess.run(
            [
                "cmake",
                "-S", str(source_dir),
                "-B", str(build_dir),
                "-DCMAKE_BUILD_TYPE=Release",
                "-DSTRAINWAVE_BUILD_TESTS=OFF",
                "-DSTRAINWAVE_BUILD_TOOLS=OFF",
                f"-DPython3_EXECUTABLE={sys.executable}",
            ],
            check=True,
        )
        subprocess.run(
            [
                "cmake", "--build", str(build_dir),
                "--target", "_core",
                f"-j{os.cpu_count() or 2}",
            ],
            check=True,
        )
        built = next((build_dir / "python" / "strainwave").glob("_core*.so"))
        out = Path(self.get_ext_fullpath(ext.name)).resolve()
        out.parent.mkdir(parents=True, exist_ok=True)
        self.copy_file(str(built), str(out))


setup(
    packages=["strainwave"],
    package_dir={"strainwave": "python/strainwave"},
    ext_modules=[CMakeExtension("strainwave._core")],
    cmdclass={"build_ext": CMakeBuild},
)
