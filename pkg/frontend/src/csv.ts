export const VERSION_LINE = "# cavity-duo v1";

export class CsvFormatError extends Error {}

export interface Table {
  source: string;
  columns: string[];
  cells: string[][];
}

export function parseTable(text: string, source: string): Table {
  const lines = text.split(/\r?\n/).filter((line) => line.length > 0);
  if (lines.length === 0) {
    throw new CsvFormatError(`${source}: empty file`);
  }
  if (lines[0] !== VERSION_LINE) {
    throw new CsvFormatError(`${source}: missing '${VERSION_LINE}' header line`);
  }
  if (lines.length < 3) {
    throw new CsvFormatError(`${source}: no data rows`);
  }
  const columns = lines[1]!.split(",");
  const cells = lines.slice(2).map((line, i) => {
    const row = line.split(",");
    if (row.length !== columns.length) {
      throw new CsvFormatError(`${source}: row ${i + 1} has ${row.length} fields, expected ${columns.length}`);
    }
    return row;
  });
  return { source, columns, cells };
}

function columnIndex(table: Table, name: string): number {
  const idx = table.columns.indexOf(name);
  if (idx < 0) {
    throw new CsvFormatError(`${table.source}: missing column '${name}'`);
  }
  return idx;
}

export function numberColumn(table: Table, name: string): number[] {
  const idx = columnIndex(table, name);
  return table.cells.map((row, i) => {
    const value = Number(row[idx]);
    if (!Number.isFinite(value)) {
      throw new CsvFormatError(`${table.source}: row ${i + 1}: '${row[idx]}' in column '${name}' is not a finite number`);
    }
    return value;
  });
}

export function stringColumn(table: Table, name: string): string[] {
  const idx = columnIndex(table, name);
  return table.cells.map((row) => row[idx]!);
}
